// reciprocity.hpp: both sides of the Gauss-sum reciprocity relating a linking
// matrix L and an even coupling matrix K, and the CS-duality (K, L) ↦ (−L, K).

#pragma once

#include <cstddef>

#include "abelcs/gauss.hpp"

namespace abelcs {

/// Upper-triangular Ĉ with Ĉ + ᵗĈ = L: Ĉ_ij = L_ij (i < j), L_ii / 2 (i = j), 0 below.
/// Throws PreconditionError on an odd diagonal entry.
CouplingMatrix chat_from_even(const SymIntMatrix& l);

struct ReciprocityReport {
  ComplexValue lhs;
  ComplexValue rhs;
  Real abs_diff;
  long sigma_k = 0;
  long sigma_l = 0;
  Integer det_k0 = 1;
  Integer det_l0 = 1;
  std::size_t m = 0;  // size of L
  std::size_t n = 0;  // size of K
  std::size_t r = 0;  // rank of L
  std::size_t s = 0;  // rank of K
  /// Σ over (Z^s/K0Z^s)^m of e^{πi·ᵗx(L⊗K0⁻¹)x}.
  CyclotomicSum lhs_sum;
  /// Σ over (Z^r/L0Z^r)^n of e^{−πi·ᵗκ(K⊗L0⁻¹)κ}.
  CyclotomicSum rhs_sum;
  /// L had an odd diagonal entry; the identity is still evaluated.
  bool l_odd = false;

  explicit ReciprocityReport(mpfr_prec_t precision)
      : lhs(precision), rhs(precision), abs_diff(precision) {}
};

/// lhs = |det K0|^{−(m − r/2)}·Σ_x e^{πi·ᵗx(L⊗K0⁻¹)x}
/// rhs = |det L0|^{−(n − s/2)}·e^{iπσ(K)σ(L)/4}·Σ_κ e^{−πi·ᵗκ(K⊗L0⁻¹)κ}
/// `budget` bounds each of the two enumerations.
ReciprocityReport reciprocity_sides(const LinkingMatrix& l, const EvenSymMatrix& k, mpfr_prec_t precision = 128,
                                    std::uint64_t budget = kDefaultTermBudget);

/// U(1)^m theory with linking matrix K and coupling −L, dual to the U(1)^n theory (K, L).
struct DualTheory {
  LinkingMatrix l_dual;
  CouplingMatrix c_dual;
};

/// Both l and k must be even.
DualTheory cs_dual(const LinkingMatrix& l, const EvenSymMatrix& k);

}  // namespace abelcs
