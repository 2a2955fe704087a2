// homology.hpp: first homology, torsion linking form and the derived
// homology/cohomology list of a surgery presentation.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "abelcs/linalg.hpp"
#include "abelcs/surgery.hpp"

namespace abelcs {

/// ⊕ Z_{p_i} with p_i ≥ 2 and p_i | p_{i+1}.
struct TorsionGroup {
  std::vector<Integer> factors;

  std::size_t rank() const { return factors.size(); }
  Integer order() const;
  bool trivial() const { return factors.empty(); }
  friend bool operator==(const TorsionGroup&, const TorsionGroup&) = default;
};

/// Z^free_rank ⊕ torsion.
struct GroupDescriptor {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  std::string to_string() const;
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Symmetric t×t rational matrix on ⊕ Z_{p_i}, read modulo 1. Entries are stored
/// unreduced; `reduced()` gives the [0,1) representative.
struct LinkingForm {
  TorsionGroup group;
  RatMatrix q;
  /// Column k is the generator of the k-th cyclic factor, in the coordinates of the
  /// nonsingular block L0 (r × t).
  IntMatrix generators;

  std::size_t t() const { return group.rank(); }
  RatMatrix reduced() const;
  /// Entrywise equality modulo 1 over the same group.
  bool equivalent_mod1(const LinkingForm& other) const;
};

/// Entry of a rational reduced into [0, 1).
Rational frac(const Rational& x);

struct FirstHomology {
  std::size_t b1 = 0;
  TorsionGroup torsion;
};

struct HomologySummary {
  std::size_t b1 = 0;
  TorsionGroup torsion;
  GroupDescriptor h0, h1, h2, h3;
};

FirstHomology first_homology(const LinkingMatrix& l);
HomologySummary full_homology(const LinkingMatrix& l);

/// Q_kl = ᵗg_k·L0⁻¹·g_l with g_k = u⁻¹·e_k from the SNF d = u·L0·v.
LinkingForm linking_form(const LinkingMatrix& l);

/// A linking matrix with cached homology and linking form.
class ManifoldPresentation {
 public:
  explicit ManifoldPresentation(LinkingMatrix l);

  const LinkingMatrix& linking_matrix() const { return l_; }
  const HomologySummary& homology() const { return homology_; }
  const LinkingForm& form() const { return form_; }

  /// L(p,q) as surgery on a chain of unknots (negative continued fraction of p/q).
  /// The form is taken on the meridian of the first component, which gives −q/p.
  static ManifoldPresentation lens(const Integer& p, const Integer& q);

 private:
  ManifoldPresentation(LinkingMatrix l, HomologySummary h, LinkingForm f)
      : l_(std::move(l)), homology_(std::move(h)), form_(std::move(f)) {}

  LinkingMatrix l_;
  HomologySummary homology_;
  LinkingForm form_;
};

inline ManifoldPresentation lens_presentation(const Integer& p, const Integer& q) {
  return ManifoldPresentation::lens(p, q);
}

/// Chain matrix with diagonal −a_1, …, −a_k and ones beside it, for p/q = a_1 − 1/(a_2 − …).
LinkingMatrix lens_chain(const Integer& p, const Integer& q);

}  // namespace abelcs
