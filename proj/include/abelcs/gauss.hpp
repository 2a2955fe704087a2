// gauss.hpp: exact sums of roots of unity, and the U(1)^n Chern-Simons
// partition function as a quadratic Gauss sum over the torsion group.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "abelcs/homology.hpp"
#include "abelcs/numeric.hpp"
#include "abelcs/surgery.hpp"

namespace abelcs {

inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

/// A rational r in [0, 1), in lowest terms, standing for e^{2πi·r}.
class Phase {
 public:
  Phase() = default;
  explicit Phase(const Rational& r);

  const Rational& value() const { return value_; }
  /// "num/den", or "0" for the trivial phase.
  std::string to_string() const;

  Phase operator-() const;
  friend Phase operator+(const Phase& a, const Phase& b);
  friend bool operator==(const Phase& a, const Phase& b) { return a.value_ == b.value_; }
  friend bool operator<(const Phase& a, const Phase& b) { return a.value_ < b.value_; }

 private:
  Rational value_;
};

/// Finite formal sum Σ multiplicity·e^{2πi·phase}. Zero multiplicities are never stored.
/// Equality is structural: no relations among roots of unity are applied.
class CyclotomicSum {
 public:
  using Terms = std::map<Phase, std::int64_t>;

  CyclotomicSum() = default;
  static CyclotomicSum one();

  void add(const Phase& phase, std::int64_t multiplicity = 1);
  const Terms& terms() const { return terms_; }
  /// Σ multiplicities.
  std::int64_t term_count() const;
  bool empty() const { return terms_.empty(); }

  friend bool operator==(const CyclotomicSum&, const CyclotomicSum&) = default;

 private:
  Terms terms_;
};

/// Σ multiplicity·e^{2πi·phase} at `precision` bits. Each part carries an error of at
/// most error_bound ≤ (distinct phases + 2)·Σ|multiplicity|·2^{2-precision}.
ComplexValue eval_numeric(const CyclotomicSum& s, mpfr_prec_t precision = 128);

/// Every phase r replaced by (1 − r) mod 1.
CyclotomicSum conjugate(const CyclotomicSum& s);

/// −½·ᵗu·(K⊗Q)·u mod 1, with u in fundamental representatives 0 ≤ u_{a,k} < p_k
/// laid out as u[a·t + k].
Phase exponent_phase(const EvenSymMatrix& k, const LinkingForm& q, std::span<const Integer> u);

/// Number of terms |group|^copies, saturating at UINT64_MAX.
std::uint64_t enumeration_size(std::span<const Integer> radices, std::size_t copies);

/// Worker threads for enumerations of at least 2^16 terms, capped at 16; 0 restores the
/// hardware default. Results do not depend on this setting.
void set_enumeration_threads(unsigned threads);

/// Z = Σ_{u ∈ T^n} e^{−πi·ᵗu(K⊗Q)u} with K even and Q a form on T.
CyclotomicSum partition_function(const EvenSymMatrix& k, const LinkingForm& q,
                                 std::uint64_t budget = kDefaultTermBudget);

/// Z for coupling C on the presented manifold, with K = C + ᵗC.
CyclotomicSum partition_function(const CouplingMatrix& c, const ManifoldPresentation& m,
                                 std::uint64_t budget = kDefaultTermBudget);

/// Σ_{x ∈ (Z^s/K0·Z^s)^m} e^{sign·πi·ᵗx(L⊗K0⁻¹)x}, over the SNF-derived fundamental domain
/// x_a = u⁻¹·w_a, 0 ≤ (w_a)_k < d_k, where d = u·K0·v.
CyclotomicSum gauss_sum_over_lattice(const SymIntMatrix& l, const EvenSymMatrix& k0, int sign,
                                     std::uint64_t budget = kDefaultTermBudget);

/// Same sum with the parity requirement relaxed: well defined as soon as either
/// `outer` or `inner` is even.
CyclotomicSum lattice_gauss_sum(const SymIntMatrix& outer, const SymIntMatrix& inner, int sign,
                                std::uint64_t budget = kDefaultTermBudget);

}  // namespace abelcs
