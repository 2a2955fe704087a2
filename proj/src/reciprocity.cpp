#include "abelcs/reciprocity.hpp"

namespace abelcs {

CouplingMatrix chat_from_even(const SymIntMatrix& l) {
  if (!l.is_even()) throw PreconditionError("chat_from_even: odd diagonal entry");
  const std::size_t n = l.size();
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = l(i, i) / 2;
    for (std::size_t j = i + 1; j < n; ++j) c(i, j) = l(i, j);
  }
  return CouplingMatrix(std::move(c));
}

ReciprocityReport reciprocity_sides(const LinkingMatrix& l, const EvenSymMatrix& k, mpfr_prec_t precision,
                                    std::uint64_t budget) {
  ReciprocityReport rep(precision);
  const BlockDecomposition bl = block_decompose(l.sym());
  const BlockDecomposition bk = block_decompose(k.sym());
  rep.m = l.size();
  rep.n = k.size();
  rep.r = bl.rank;
  rep.s = bk.rank;
  rep.det_l0 = det_int(bl.a0.matrix());
  rep.det_k0 = det_int(bk.a0.matrix());
  rep.sigma_l = signature(l.sym());
  rep.sigma_k = signature(k.sym());
  rep.l_odd = !l.is_even();

  // K0 is even: congruence preserves ᵗx·K·x mod 2.
  rep.lhs_sum = lattice_gauss_sum(l.sym(), bk.a0, 1, budget);
  rep.rhs_sum = lattice_gauss_sum(k.sym(), bl.a0, -1, budget);

  const mpfr_prec_t wp = precision + 32;
  const long lhs_twice_exp = -(2 * static_cast<long>(rep.m) - static_cast<long>(rep.r));
  const long rhs_twice_exp = -(2 * static_cast<long>(rep.n) - static_cast<long>(rep.s));
  const Real lhs_scale = half_integer_power(abs(rep.det_k0), lhs_twice_exp, wp);
  const Real rhs_scale = half_integer_power(abs(rep.det_l0), rhs_twice_exp, wp);
  // e^{iπσσ/4} = e^{2πi·σσ/8}
  Rational sigma_phase(Integer(rep.sigma_k * rep.sigma_l), Integer(8));
  sigma_phase.canonicalize();
  const ComplexValue rhs_phase = unit_phase(sigma_phase, wp);

  ComplexValue lhs = lhs_scale * eval_numeric(rep.lhs_sum, wp);
  ComplexValue rhs = rhs_scale * (rhs_phase * eval_numeric(rep.rhs_sum, wp));
  const ComplexValue diff = lhs - rhs;

  rep.lhs = ComplexValue(precision);
  mpfr_set(rep.lhs.re.get(), lhs.re.get(), MPFR_RNDN);
  mpfr_set(rep.lhs.im.get(), lhs.im.get(), MPFR_RNDN);
  rep.lhs.error_bound = lhs.error_bound;
  rep.rhs = ComplexValue(precision);
  mpfr_set(rep.rhs.re.get(), rhs.re.get(), MPFR_RNDN);
  mpfr_set(rep.rhs.im.get(), rhs.im.get(), MPFR_RNDN);
  rep.rhs.error_bound = rhs.error_bound;
  mpfr_hypot(rep.abs_diff.get(), diff.re.get(), diff.im.get(), MPFR_RNDN);
  return rep;
}

DualTheory cs_dual(const LinkingMatrix& l, const EvenSymMatrix& k) {
  if (!l.is_even()) throw PreconditionError("cs_dual: linking matrix must be even");
  return DualTheory{LinkingMatrix(k.sym()), chat_from_even(-l.sym())};
}

}  // namespace abelcs
