// support.hpp: random generators and brute-force oracles shared by the test suites.
//
// The oracles here deliberately avoid the library's enumeration engine: they walk
// naive boxes and evaluate exponents with plain rational arithmetic.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "abelcs/gauss.hpp"
#include "abelcs/homology.hpp"
#include "abelcs/linalg.hpp"
#include "abelcs/surgery.hpp"

namespace abelcs::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

inline SymIntMatrix random_symmetric(Rng& rng, std::size_t n, long lo, long hi) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, lo, hi);
  return SymIntMatrix(m);
}

inline SymIntMatrix random_even_symmetric(Rng& rng, std::size_t n, long lo, long hi) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, lo, hi);
    long d = uniform(rng, lo, hi);
    if (d % 2 != 0) d += (d < hi ? 1 : -1);
    m(i, i) = d;
  }
  return SymIntMatrix(m);
}

/// Product of random elementary matrices: unimodular by construction.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps = 8) {
  IntMatrix g = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1)) g(0, 0) = -1;
    return g;
  }
  for (int s = 0; s < steps; ++s) {
    std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    const long q = uniform(rng, -2, 2);
    for (std::size_t r = 0; r < n; ++r) g(r, i) += q * g(r, j);
  }
  return g;
}

inline bool divides(const Integer& a, const Integer& b) {
  if (a == 0) return b == 0;
  return b % a == 0;
}

/// Signature from Eigen's symmetric eigensolver; eigenvalues within `tol` of 0 count as zero.
inline long float_signature(const SymIntMatrix& a, double tol = 1e-7) {
  const std::size_t n = a.size();
  if (n == 0) return 0;
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  long sig = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev > tol * scale) ++sig;
    if (ev < -tol * scale) --sig;
  }
  return sig;
}

/// All integer vectors 0 ≤ v_i < radix_i, digit 0 fastest.
inline std::vector<std::vector<Integer>> box(const std::vector<Integer>& radices) {
  std::vector<std::vector<Integer>> out{{}};
  for (const auto& r : radices) {
    std::vector<std::vector<Integer>> next;
    for (const auto& prefix : out)
      for (long x = 0; x < r.get_si(); ++x) {
        auto v = prefix;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

/// Σ_{u ∈ T^n} e^{−πi·ᵗu(K⊗Q)u}, exponent evaluated entry by entry in Q.
inline CyclotomicSum naive_partition(const SymIntMatrix& k, const LinkingForm& form) {
  const std::size_t n = k.size(), t = form.t();
  std::vector<Integer> radices;
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& p : form.group.factors) radices.push_back(p);
  CyclotomicSum out;
  for (const auto& u : box(radices)) {
    Rational v = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < t; ++i)
          for (std::size_t j = 0; j < t; ++j) v += k(a, b) * form.q(i, j) * u[a * t + i] * u[b * t + j];
    out.add(Phase(-v / 2));
  }
  return out;
}

/// Coset representatives of Z^s / K0·Z^s, found by scanning [0, |det|)^s and keeping the
/// first vector of every class (x ~ y iff K0⁻¹(x − y) is integral).
inline std::vector<std::vector<Integer>> naive_cosets(const IntMatrix& k0) {
  const std::size_t s = k0.rows();
  const Integer det = abs(det_int(k0));
  const RatMatrix inv = inverse_rational(k0);
  std::set<std::vector<Rational>> seen;
  std::vector<std::vector<Integer>> reps;
  for (const auto& x : box(std::vector<Integer>(s, det))) {
    std::vector<Rational> key(s);
    for (std::size_t i = 0; i < s; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < s; ++j) acc += inv(i, j) * x[j];
      key[i] = frac(acc);
    }
    if (seen.insert(key).second) reps.push_back(x);
  }
  return reps;
}

/// Σ over m-tuples of naive coset representatives of e^{sign·πi·ᵗx(L⊗K0⁻¹)x}.
inline CyclotomicSum naive_lattice_sum(const SymIntMatrix& l, const IntMatrix& k0, int sign) {
  const std::size_t m = l.size();
  const auto reps = naive_cosets(k0);
  const RatMatrix inv = inverse_rational(k0);
  const std::size_t s = k0.rows();
  CyclotomicSum out;
  std::vector<std::size_t> idx(m, 0);
  for (;;) {
    Rational v = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (l(a, b) == 0) continue;
        Rational xy = 0;
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < s; ++j) xy += reps[idx[a]][i] * inv(i, j) * reps[idx[b]][j];
        v += l(a, b) * xy;
      }
    out.add(Phase(sign * v / 2));
    std::size_t pos = 0;
    while (pos < m && ++idx[pos] == reps.size()) idx[pos++] = 0;
    if (pos == m) break;
  }
  return out;
}

inline std::complex<double> numeric(const CyclotomicSum& s) { return eval_numeric(s, 128).to_complex(); }

/// Elements z of T^n with ᵗu(K⊗Q)z ∈ Z for every u, and Σ_{z ∈ radical} e^{2πi·φ(z)},
/// φ(z) = −½·ᵗz(K⊗Q)z.
inline std::complex<double> naive_radical_sum(const SymIntMatrix& k, const LinkingForm& form,
                                              std::size_t* radical_size = nullptr) {
  const std::size_t n = k.size();
  std::vector<Integer> radices;
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& p : form.group.factors) radices.push_back(p);
  const RatMatrix kq = kron(k.matrix(), form.q);
  const std::size_t dim = radices.size();
  CyclotomicSum sum;
  std::size_t count = 0;
  for (const auto& z : box(radices)) {
    // Pairing with unit vectors suffices: B(·, z) is linear.
    bool in_radical = true;
    for (std::size_t i = 0; i < dim && in_radical; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < dim; ++j) acc += kq(i, j) * z[j];
      if (acc.get_den() != 1) in_radical = false;
    }
    if (!in_radical) continue;
    ++count;
    Rational v = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) v += kq(i, j) * z[i] * z[j];
    sum.add(Phase(-v / 2));
  }
  if (radical_size) *radical_size = count;
  return numeric(sum);
}

/// The pairing (u, v) ↦ ᵗu·Q·v mod 1 separates points of the group.
inline bool form_nondegenerate(const LinkingForm& form) {
  const auto elems = box(form.group.factors);
  const std::size_t t = form.t();
  for (const auto& u : elems) {
    bool all_zero_u = true;
    for (const auto& x : u) all_zero_u &= (x == 0);
    if (all_zero_u) continue;
    bool separates = false;
    for (std::size_t j = 0; j < t && !separates; ++j) {
      Rational acc = 0;
      for (std::size_t i = 0; i < t; ++i) acc += u[i] * form.q(i, j);
      if (acc.get_den() != 1) separates = true;
    }
    if (!separates) return false;
  }
  return true;
}

/// p_i·Q_ij and p_j·Q_ij are integers, and Q is symmetric.
inline bool form_well_defined(const LinkingForm& form) {
  for (std::size_t i = 0; i < form.t(); ++i)
    for (std::size_t j = 0; j < form.t(); ++j) {
      if (form.q(i, j) != form.q(j, i)) return false;
      if (Rational(form.q(i, j) * form.group.factors[i]).get_den() != 1) return false;
      if (Rational(form.q(i, j) * form.group.factors[j]).get_den() != 1) return false;
    }
  return true;
}

inline KirbyMove random_move(Rng& rng, const LinkingMatrix& l) {
  const std::size_t n = l.size();
  // Remove an isolated ±1 component when one exists and the dice say so.
  if (n > 0 && uniform(rng, 0, 3) == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (abs(l(i, i)) != 1) continue;
      bool isolated = true;
      for (std::size_t j = 0; j < n; ++j) isolated &= (j == i || l(i, j) == 0);
      if (isolated) return KirbyMove::remove(i);
    }
  }
  if (n < 2 || uniform(rng, 0, 2) == 0) return KirbyMove::add(uniform(rng, 0, 1) ? 1 : -1);
  std::size_t i0 = uniform(rng, 0, n - 1), j0 = uniform(rng, 0, n - 2);
  if (j0 >= i0) ++j0;
  return KirbyMove::slide(i0, j0, uniform(rng, 0, 1) ? 1 : -1);
}

}  // namespace abelcs::testing
