#include "abelcs/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace abelcs {

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> out;
  const std::size_t k = std::min(d.rows(), d.cols());
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(d(i, i));
  return out;
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

// Elimination state for SNF: every operation on d is mirrored on u (rows) or v (columns)
// so that d = u·a·v holds throughout.
struct SnfWork {
  IntMatrix d, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row dst += q * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (d(src, c) != 0) d(dst, c) += q * d(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c)
      if (u(src, c) != 0) u(dst, c) += q * u(src, c);
  }
  // col dst += q * col src
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < d.rows(); ++r)
      if (d(r, src) != 0) d(r, dst) += q * d(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r)
      if (v(r, src) != 0) v(r, dst) += q * v(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = -d(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(n)};
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    bool rest_zero = false;
    for (;;) {
      std::size_t pi = 0, pj = 0;
      bool found = false;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& x = w.d(i, j);
          if (x == 0) continue;
          if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
            best = abs(x);
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        rest_zero = true;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      const Integer pivot = w.d(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.d(i, t) == 0) continue;
        Integer q = w.d(i, t) / pivot;
        if (q != 0) w.add_row(i, t, -q);
        if (w.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.d(t, j) == 0) continue;
        Integer q = w.d(t, j) / pivot;
        if (q != 0) w.add_col(j, t, -q);
        if (w.d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the remaining block; otherwise fold an offending row in.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.d(i, j) % pivot != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (rest_zero) break;
    if (w.d(t, t) < 0) w.negate_row(t);
  }
  return SnfResult{std::move(w.u), std::move(w.d), std::move(w.v)};
}

Integer det_int(const IntMatrix& a) {
  if (!a.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(i, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RatMatrix inverse_rational(const IntMatrix& a) {
  if (!a.is_square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = to_rational(a);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw PreconditionError("inverse of a singular matrix");
    if (p != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m(k, c), m(p, c));
        std::swap(inv(k, c), inv(p, c));
      }
    const Rational piv = m(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      m(k, c) /= piv;
      inv(k, c) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const Rational f = m(i, k);
      for (std::size_t c = 0; c < n; ++c) {
        if (m(k, c) != 0) m(i, c) -= f * m(k, c);
        if (inv(k, c) != 0) inv(i, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  const RatMatrix r = inverse_rational(a);
  IntMatrix out(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      if (r(i, j).get_den() != 1) throw PreconditionError("matrix is not unimodular");
      out(i, j) = r(i, j).get_num();
    }
  return out;
}

std::size_t rank(const IntMatrix& a) {
  RatMatrix m = to_rational(a);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

long signature(const SymIntMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m = to_rational(a.matrix());
  std::vector<bool> active(n, true);
  std::size_t remaining = n;
  long sig = 0;

  auto eliminate_single = [&](std::size_t i) {
    const Rational piv = m(i, i);
    sig += sgn(piv);
    active[i] = false;
    --remaining;
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || m(x, i) == 0) continue;
      const Rational f = m(x, i) / piv;
      for (std::size_t y = 0; y < n; ++y)
        if (active[y] && m(i, y) != 0) m(x, y) -= f * m(i, y);
    }
  };

  // Schur complement of [[0,b],[b,0]]: its inverse is [[0,1/b],[1/b,0]].
  auto eliminate_hyperbolic = [&](std::size_t i, std::size_t j) {
    const Rational b = m(i, j);
    active[i] = active[j] = false;
    remaining -= 2;
    std::vector<std::size_t> rest;
    for (std::size_t x = 0; x < n; ++x)
      if (active[x]) rest.push_back(x);
    std::vector<Rational> col_i(n), col_j(n);
    for (auto x : rest) {
      col_i[x] = m(x, i);
      col_j[x] = m(x, j);
    }
    for (auto x : rest)
      for (auto y : rest) {
        if ((col_i[x] == 0 || col_j[y] == 0) && (col_j[x] == 0 || col_i[y] == 0)) continue;
        m(x, y) -= (col_i[x] * col_j[y] + col_j[x] * col_i[y]) / b;
      }
  };

  while (remaining > 0) {
    std::size_t diag = n;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && m(i, i) != 0) {
        diag = i;
        break;
      }
    if (diag != n) {
      eliminate_single(diag);
      continue;
    }
    std::size_t pi = n, pj = n;
    for (std::size_t i = 0; i < n && pi == n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (active[j] && m(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    }
    if (pi == n) break;  // remaining block is zero
    eliminate_hyperbolic(pi, pj);
  }
  return sig;
}

namespace {

template <class R, class A, class B>
Matrix<R> kron_impl(const Matrix<A>& a, const Matrix<B>& b) {
  Matrix<R> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = R(a(i, j) * b(k, l));
    }
  return r;
}

}  // namespace

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) { return kron_impl<Integer>(a, b); }
RatMatrix kron(const IntMatrix& a, const RatMatrix& b) { return kron_impl<Rational>(to_rational(a), b); }
RatMatrix kron(const RatMatrix& a, const RatMatrix& b) { return kron_impl<Rational>(a, b); }

BlockDecomposition block_decompose(const SymIntMatrix& a) {
  const std::size_t n = a.size();
  if (det_int(a.matrix()) != 0) return BlockDecomposition{IntMatrix::identity(n), a, n};

  // Columns r.. of v span ker(a); symmetry then kills the matching rows of ᵗv·a·v.
  SnfResult snf = smith_normal_form(a.matrix());
  const std::size_t r = snf.rank();
  IntMatrix c = congruence(snf.v, a.matrix());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = r; j < n; ++j)
      if (c(i, j) != 0 || c(j, i) != 0) throw std::logic_error("block_decompose: kernel block not zero");
  return BlockDecomposition{std::move(snf.v), SymIntMatrix(c.block(0, 0, r, r)), r};
}

}  // namespace abelcs
