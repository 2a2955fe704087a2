#include "abelcs/homology.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace abelcs {

Integer TorsionGroup::order() const {
  Integer o = 1;
  for (const auto& p : factors) o *= p;
  return o;
}

std::string GroupDescriptor::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << 'Z';
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& p : torsion) {
    if (!first) os << " + ";
    os << "Z_" << p;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

Rational frac(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

RatMatrix LinkingForm::reduced() const {
  RatMatrix r = q;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = frac(r(i, j));
  return r;
}

bool LinkingForm::equivalent_mod1(const LinkingForm& other) const {
  return group == other.group && reduced() == other.reduced();
}

FirstHomology first_homology(const LinkingMatrix& l) {
  const SnfResult snf = smith_normal_form(l.matrix());
  FirstHomology h;
  h.b1 = l.size() - snf.rank();
  for (const auto& d : snf.diagonal())
    if (d >= 2) h.torsion.factors.push_back(d);
  return h;
}

HomologySummary full_homology(const LinkingMatrix& l) {
  const FirstHomology fh = first_homology(l);
  HomologySummary s;
  s.b1 = fh.b1;
  s.torsion = fh.torsion;
  s.h0 = GroupDescriptor{1, {}};
  s.h1 = GroupDescriptor{fh.b1, fh.torsion.factors};
  s.h2 = GroupDescriptor{fh.b1, {}};
  s.h3 = GroupDescriptor{1, {}};
  return s;
}

LinkingForm linking_form(const LinkingMatrix& l) {
  const BlockDecomposition bd = block_decompose(l.sym());
  LinkingForm form;
  const std::size_t r = bd.rank;
  if (r == 0) return form;

  const IntMatrix& l0 = bd.a0.matrix();
  const SnfResult snf = smith_normal_form(l0);
  const IntMatrix u_inv = inverse_unimodular(snf.u);
  const RatMatrix l0_inv = inverse_rational(l0);

  // x ∈ L0·Z^r  ⟺  u·x ∈ d·Z^r, so u⁻¹·e_k generates the k-th cyclic factor.
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < r; ++k)
    if (snf.d(k, k) >= 2) {
      cols.push_back(k);
      form.group.factors.push_back(snf.d(k, k));
    }
  const std::size_t t = cols.size();
  form.generators = IntMatrix(r, t);
  for (std::size_t c = 0; c < t; ++c)
    for (std::size_t i = 0; i < r; ++i) form.generators(i, c) = u_inv(i, cols[c]);

  const RatMatrix g = to_rational(form.generators);
  form.q = g.transpose() * l0_inv * g;
  return form;
}

ManifoldPresentation::ManifoldPresentation(LinkingMatrix l)
    : l_(std::move(l)), homology_(full_homology(l_)), form_(linking_form(l_)) {}

LinkingMatrix lens_chain(const Integer& p, const Integer& q) {
  if (p < 1) throw PreconditionError("lens space L(p,q) needs p >= 1");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw PreconditionError("lens space L(p,q) needs gcd(p,q) = 1");
  if (p == 1) return unknot(-1);

  Integer num = p;
  Integer den;
  mpz_fdiv_r(den.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  std::vector<Integer> coeffs;
  while (den != 0) {
    Integer a;
    mpz_cdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    coeffs.push_back(a);
    Integer next = a * den - num;
    num = den;
    den = next;
  }
  const std::size_t k = coeffs.size();
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    m(i, i) = -coeffs[i];
    if (i + 1 < k) m(i, i + 1) = m(i + 1, i) = 1;
  }
  return LinkingMatrix(std::move(m));
}

ManifoldPresentation ManifoldPresentation::lens(const Integer& p, const Integer& q) {
  LinkingMatrix l = lens_chain(p, q);
  HomologySummary h = full_homology(l);
  LinkingForm form;
  if (p > 1) {
    if (h.b1 != 0 || h.torsion.factors != std::vector<Integer>{p})
      throw std::logic_error("lens chain does not present Z_p");
    const RatMatrix inv = inverse_rational(l.matrix());
    form.group.factors = {p};
    form.q = RatMatrix(1, 1);
    form.q(0, 0) = inv(0, 0);
    form.generators = IntMatrix(l.size(), 1);
    form.generators(0, 0) = 1;
  }
  return ManifoldPresentation(std::move(l), std::move(h), std::move(form));
}

}  // namespace abelcs
