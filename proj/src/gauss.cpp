#include "abelcs/gauss.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

namespace abelcs {

Phase::Phase(const Rational& r) : value_(frac(r)) {}

std::string Phase::to_string() const {
  if (value_ == 0) return "0";
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Phase Phase::operator-() const { return Phase(-value_); }

Phase operator+(const Phase& a, const Phase& b) { return Phase(a.value_ + b.value_); }

CyclotomicSum CyclotomicSum::one() {
  CyclotomicSum s;
  s.add(Phase(), 1);
  return s;
}

void CyclotomicSum::add(const Phase& phase, std::int64_t multiplicity) {
  if (multiplicity == 0) return;
  auto [it, inserted] = terms_.try_emplace(phase, multiplicity);
  if (!inserted) {
    it->second += multiplicity;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t CyclotomicSum::term_count() const {
  std::int64_t n = 0;
  for (const auto& [p, m] : terms_) n += m;
  return n;
}

ComplexValue eval_numeric(const CyclotomicSum& s, mpfr_prec_t precision) {
  double weight = 0.0;
  for (const auto& [p, m] : s.terms()) weight += std::abs(static_cast<double>(m));
  const auto guard = static_cast<mpfr_prec_t>(
      16 + std::ceil(std::log2(2.0 + weight + static_cast<double>(s.terms().size()))));
  const mpfr_prec_t wp = precision + guard;

  Real re(wp), im(wp), c(wp), sn(wp), angle(wp), two_pi(wp);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_2ui(two_pi.get(), two_pi.get(), 1, MPFR_RNDN);
  for (const auto& [phase, mult] : s.terms()) {
    const Rational& r = phase.value();
    mpfr_mul_z(angle.get(), two_pi.get(), r.get_num_mpz_t(), MPFR_RNDN);
    mpfr_div_z(angle.get(), angle.get(), r.get_den_mpz_t(), MPFR_RNDN);
    mpfr_sin_cos(sn.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_mul_si(c.get(), c.get(), static_cast<long>(mult), MPFR_RNDN);
    mpfr_mul_si(sn.get(), sn.get(), static_cast<long>(mult), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), c.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), sn.get(), MPFR_RNDN);
  }
  ComplexValue z(precision);
  mpfr_set(z.re.get(), re.get(), MPFR_RNDN);
  mpfr_set(z.im.get(), im.get(), MPFR_RNDN);
  z.error_bound = (static_cast<double>(s.terms().size()) + 2.0) * std::max(weight, 1.0) *
                  std::ldexp(1.0, static_cast<int>(2 - precision));
  return z;
}

CyclotomicSum conjugate(const CyclotomicSum& s) {
  CyclotomicSum out;
  for (const auto& [p, m] : s.terms()) out.add(-p, m);
  return out;
}

Phase exponent_phase(const EvenSymMatrix& k, const LinkingForm& q, std::span<const Integer> u) {
  const std::size_t n = k.size();
  const std::size_t t = q.t();
  if (u.size() != n * t) throw PreconditionError("exponent_phase: vector length must be n*t");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < t; ++j) {
      const Integer& x = u[a * t + j];
      if (x < 0 || x >= q.group.factors[j])
        throw PreconditionError("exponent_phase: representative outside [0, p-1]");
    }
  const RatMatrix kq = kron(k.matrix(), q.q);
  Rational v = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (u[j] != 0 && kq(i, j) != 0) v += kq(i, j) * u[i] * u[j];
  }
  return Phase(-v / 2);
}

std::uint64_t enumeration_size(std::span<const Integer> radices, std::size_t copies) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < copies; ++c)
    for (const auto& r : radices) {
      if (r <= 0) throw PreconditionError("enumeration radix must be positive");
      if (!r.fits_ulong_p()) return kMax;
      const std::uint64_t x = r.get_ui();
      if (total > kMax / x) return kMax;
      total *= x;
    }
  return total;
}

namespace {

using u128 = unsigned __int128;

// ᵗw·M·w over the box 0 ≤ w_i < radix_i, reduced mod `mod`.
struct QuadraticForm {
  std::size_t dim = 0;
  std::vector<std::uint64_t> m;  // dim × dim, entries in [0, mod)
  std::vector<std::uint64_t> radix;
  std::uint64_t mod = 1;

  std::uint64_t at(std::size_t i, std::size_t j) const { return m[i * dim + j]; }
};

std::uint64_t reduce(const Integer& x, const Integer& mod) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  return r.get_ui();
}

// Coordinates of radix 1 are dropped; they only ever take the value 0.
QuadraticForm make_form(const IntMatrix& m, const std::vector<Integer>& radices, const Integer& mod) {
  if (mod <= 0 || mod > Integer(1) << 62) throw PreconditionError("phase denominator too large to enumerate");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < radices.size(); ++i)
    if (radices[i] > 1) keep.push_back(i);
  QuadraticForm f;
  f.dim = keep.size();
  f.mod = mod.get_ui();
  f.m.resize(f.dim * f.dim);
  for (std::size_t a = 0; a < f.dim; ++a) {
    f.radix.push_back(radices[keep[a]].get_ui());
    for (std::size_t b = 0; b < f.dim; ++b) f.m[a * f.dim + b] = reduce(m(keep[a], keep[b]), mod);
  }
  return f;
}

class Counts {
 public:
  explicit Counts(std::uint64_t mod) : dense_(mod <= (1u << 20)) {
    if (dense_) vec_.assign(mod, 0);
  }
  void bump(std::uint64_t key) {
    if (dense_)
      ++vec_[key];
    else
      ++map_[key];
  }
  void merge_into(std::unordered_map<std::uint64_t, std::uint64_t>& out) const {
    if (dense_) {
      for (std::uint64_t k = 0; k < vec_.size(); ++k)
        if (vec_[k]) out[k] += vec_[k];
    } else {
      for (const auto& [k, v] : map_) out[k] += v;
    }
  }

 private:
  bool dense_;
  std::vector<std::uint64_t> vec_;
  std::unordered_map<std::uint64_t, std::uint64_t> map_;
};

// Odometer over linear indices [begin, end), digit 0 fastest. The value N = ᵗwMw and
// the vector Mw are updated incrementally: N(w + s·e_a) = N + 2s(Mw)_a + s²M_aa.
void count_range(const QuadraticForm& f, std::uint64_t begin, std::uint64_t end, Counts& counts) {
  const std::size_t dim = f.dim;
  const std::uint64_t mod = f.mod;
  auto add = [mod](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s >= mod ? s - mod : s;
  };
  auto mul = [mod](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>((u128)a * b % mod); };
  auto neg = [mod](std::uint64_t a) { return a == 0 ? 0 : mod - a; };

  std::vector<std::uint64_t> w(dim, 0), mw(dim, 0);
  std::uint64_t idx = begin;
  for (std::size_t a = 0; a < dim; ++a) {
    w[a] = idx % f.radix[a];
    idx /= f.radix[a];
  }
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t a = 0; a < dim; ++a) mw[b] = add(mw[b], mul(f.at(b, a), w[a] % mod));
  std::uint64_t value = 0;
  for (std::size_t b = 0; b < dim; ++b) value = add(value, mul(w[b] % mod, mw[b]));

  for (std::uint64_t i = begin; i < end; ++i) {
    counts.bump(value);
    if (i + 1 == end) break;
    for (std::size_t a = 0;; ++a) {
      if (w[a] + 1 < f.radix[a]) {
        value = add(value, add(add(mw[a], mw[a]), f.at(a, a)));
        for (std::size_t b = 0; b < dim; ++b) mw[b] = add(mw[b], f.at(b, a));
        ++w[a];
        break;
      }
      const std::uint64_t c = (f.radix[a] - 1) % mod;
      const std::uint64_t two_c_mw = mul(add(c, c), mw[a]);
      value = add(add(value, neg(two_c_mw)), mul(mul(c, c), f.at(a, a)));
      for (std::size_t b = 0; b < dim; ++b) mw[b] = add(mw[b], neg(mul(c, f.at(b, a))));
      w[a] = 0;
    }
  }
}

std::atomic<unsigned> thread_override{0};

std::unordered_map<std::uint64_t, std::uint64_t> count_values(const QuadraticForm& f) {
  std::uint64_t total = 1;
  for (auto r : f.radix) total *= r;

  std::size_t workers = 1;
  if (total >= (1u << 16)) {
    const unsigned wanted = thread_override.load();
    workers = std::max(1u, std::min(16u, wanted ? wanted : std::thread::hardware_concurrency()));
  }
  std::vector<Counts> partial;
  partial.reserve(workers);
  for (std::size_t k = 0; k < workers; ++k) partial.emplace_back(f.mod);

  auto chunk = [&](std::size_t k) {
    const std::uint64_t lo = static_cast<std::uint64_t>((u128)total * k / workers);
    const std::uint64_t hi = static_cast<std::uint64_t>((u128)total * (k + 1) / workers);
    if (lo < hi) count_range(f, lo, hi, partial[k]);
  };
  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(chunk, k);
  }
  std::unordered_map<std::uint64_t, std::uint64_t> merged;
  for (const auto& c : partial) c.merge_into(merged);
  return merged;
}

void check_budget(std::uint64_t terms, std::uint64_t budget) {
  if (terms > budget)
    throw BudgetExceeded("enumeration needs " +
                         (terms == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                             : std::to_string(terms)) +
                         " terms, budget is " + std::to_string(budget));
}

// Σ e^{2πi·sign·N/mod} over the box, as exact phases.
CyclotomicSum phases_from_counts(const std::unordered_map<std::uint64_t, std::uint64_t>& counts, int sign,
                                 std::uint64_t mod) {
  CyclotomicSum out;
  const Integer den(static_cast<unsigned long>(mod));
  for (const auto& [n, c] : counts) {
    Rational r(Integer(static_cast<unsigned long>(n)) * sign, den);
    r.canonicalize();
    out.add(Phase(r), static_cast<std::int64_t>(c));
  }
  return out;
}

Integer denominator_lcm(const RatMatrix& q) {
  Integer l = 1;
  for (const auto& x : q.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace

void set_enumeration_threads(unsigned threads) { thread_override.store(threads); }

CyclotomicSum partition_function(const EvenSymMatrix& k, const LinkingForm& q, std::uint64_t budget) {
  const std::size_t n = k.size();
  const std::size_t t = q.t();
  if (n == 0 || t == 0) return CyclotomicSum::one();
  check_budget(enumeration_size(q.group.factors, n), budget);

  const Integer den = denominator_lcm(q.q);
  IntMatrix qi(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      Rational x = q.q(i, j) * den;
      qi(i, j) = x.get_num();
    }
  std::vector<Integer> radices;
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& p : q.group.factors) radices.push_back(p);

  const Integer mod = 2 * den;
  const QuadraticForm f = make_form(kron(k.matrix(), qi), radices, mod);
  // e^{−πi·N/den} = e^{2πi·(−N/(2·den))}
  return phases_from_counts(count_values(f), -1, f.mod);
}

CyclotomicSum partition_function(const CouplingMatrix& c, const ManifoldPresentation& m, std::uint64_t budget) {
  return partition_function(coupling_to_even(c), m.form(), budget);
}

CyclotomicSum lattice_gauss_sum(const SymIntMatrix& outer, const SymIntMatrix& inner, int sign,
                                std::uint64_t budget) {
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  if (!outer.is_even() && !inner.is_even())
    throw PreconditionError("Gauss sum over a lattice quotient needs an even matrix on one side");
  const std::size_t m = outer.size();
  const std::size_t s = inner.size();
  if (s > 0 && det_int(inner.matrix()) == 0) throw PreconditionError("lattice matrix is singular");
  if (m == 0 || s == 0) return CyclotomicSum::one();

  const Integer det = det_int(inner.matrix());
  const Integer d_abs = abs(det);
  const RatMatrix inv = inverse_rational(inner.matrix());
  IntMatrix adj(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Rational x = inv(i, j) * d_abs;
      if (x.get_den() != 1) throw std::logic_error("scaled inverse is not integral");
      adj(i, j) = x.get_num();
    }

  const SnfResult snf = smith_normal_form(inner.matrix());
  const IntMatrix u_inv = inverse_unimodular(snf.u);
  const IntMatrix a_w = congruence(u_inv, adj);  // form in the w coordinates of x = u⁻¹·w

  const std::vector<Integer> d = snf.diagonal();
  check_budget(enumeration_size(d, m), budget);
  std::vector<Integer> radices;
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& x : d) radices.push_back(x);

  const QuadraticForm f = make_form(kron(outer.matrix(), a_w), radices, 2 * d_abs);
  return phases_from_counts(count_values(f), sign, f.mod);
}

CyclotomicSum gauss_sum_over_lattice(const SymIntMatrix& l, const EvenSymMatrix& k0, int sign,
                                     std::uint64_t budget) {
  return lattice_gauss_sum(l, k0.sym(), sign, budget);
}

}  // namespace abelcs
