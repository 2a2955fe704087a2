#include "abelcs/matrix.hpp"

#include <sstream>
#include <utility>

namespace abelcs {

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

IntMatrix congruence(const IntMatrix& p, const IntMatrix& a) { return p.transpose() * a * p; }

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

SymIntMatrix::SymIntMatrix(IntMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw PreconditionError("symmetric matrix must be square");
  if (!m_.is_symmetric()) throw PreconditionError("matrix is not symmetric");
}

bool SymIntMatrix::is_even() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (mpz_odd_p(m_(i, i).get_mpz_t())) return false;
  return true;
}

namespace {

template <class T>
std::string render(const Matrix<T>& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      os << a(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string to_string(const IntMatrix& a) { return render(a); }
std::string to_string(const RatMatrix& a) { return render(a); }

}  // namespace abelcs
