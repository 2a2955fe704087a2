// surgery.hpp: linking matrices as surgery presentations, and Kirby moves on them.
//
// All component indices in this API are 0-based. The CLI presents them 1-based.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abelcs/matrix.hpp"

namespace abelcs {

/// Linking matrix of a framed link: diagonal = framings, off-diagonal = pairwise linking numbers.
class LinkingMatrix {
 public:
  LinkingMatrix() = default;
  explicit LinkingMatrix(SymIntMatrix m) : m_(std::move(m)) {}
  explicit LinkingMatrix(IntMatrix m) : m_(std::move(m)) {}
  LinkingMatrix(std::initializer_list<std::initializer_list<Integer>> rows) : m_(rows) {}

  std::size_t size() const { return m_.size(); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const SymIntMatrix& sym() const { return m_; }
  const IntMatrix& matrix() const { return m_.matrix(); }
  bool is_even() const { return m_.is_even(); }

  friend bool operator==(const LinkingMatrix& a, const LinkingMatrix& b) { return a.m_ == b.m_; }

 private:
  SymIntMatrix m_;
};

/// Square integer matrix of Chern-Simons couplings; no symmetry required.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  explicit CouplingMatrix(IntMatrix c);
  CouplingMatrix(std::initializer_list<std::initializer_list<Integer>> rows)
      : CouplingMatrix(IntMatrix(rows)) {}

  std::size_t size() const { return c_.rows(); }
  const IntMatrix& matrix() const { return c_; }

 private:
  IntMatrix c_;
};

/// Symmetric integer matrix with even diagonal.
class EvenSymMatrix {
 public:
  EvenSymMatrix() = default;
  explicit EvenSymMatrix(SymIntMatrix k);
  EvenSymMatrix(std::initializer_list<std::initializer_list<Integer>> rows)
      : EvenSymMatrix(SymIntMatrix(rows)) {}

  std::size_t size() const { return k_.size(); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return k_(i, j); }
  const SymIntMatrix& sym() const { return k_; }
  const IntMatrix& matrix() const { return k_.matrix(); }

  EvenSymMatrix operator-() const { return EvenSymMatrix(-k_); }
  friend bool operator==(const EvenSymMatrix& a, const EvenSymMatrix& b) { return a.k_ == b.k_; }

 private:
  SymIntMatrix k_;
};

LinkingMatrix unknot(const Integer& framing);
LinkingMatrix hopf(const Integer& f1, const Integer& f2);
LinkingMatrix borromean();

/// Named preset: "unknot" (1 param), "hopf" (2 params) or "borromean" (none).
LinkingMatrix preset(std::string_view name, std::span<const Integer> params);

/// μ₁: border with an isolated component of framing sign = ±1 (appended last).
LinkingMatrix kirby1(const LinkingMatrix& l, int sign);

/// Removes component `index`, which must be unlinked from the rest with framing ±1.
LinkingMatrix kirby1_inverse(const LinkingMatrix& l, std::size_t index);

/// The congruence matrix of a handle slide: identity plus `sign` at (j0, i0).
IntMatrix slide_matrix(std::size_t n, std::size_t i0, std::size_t j0, int sign);

/// μ₂: slides component i0 over j0, L' = ᵗP·L·P with P = slide_matrix(n, i0, j0, sign).
LinkingMatrix kirby2(const LinkingMatrix& l, std::size_t i0, std::size_t j0, int sign);

struct KirbyMove {
  enum class Kind { add, remove, slide };
  Kind kind = Kind::add;
  int sign = 1;           // add, slide
  std::size_t index = 0;  // remove
  std::size_t i0 = 0;     // slide
  std::size_t j0 = 0;     // slide

  static KirbyMove add(int sign) { return {Kind::add, sign, 0, 0, 0}; }
  static KirbyMove remove(std::size_t index) { return {Kind::remove, 1, index, 0, 0}; }
  static KirbyMove slide(std::size_t i0, std::size_t j0, int sign) { return {Kind::slide, sign, 0, i0, j0}; }

  friend bool operator==(const KirbyMove&, const KirbyMove&) = default;
};

LinkingMatrix apply(const LinkingMatrix& l, const KirbyMove& move);

struct EvenizeResult {
  LinkingMatrix result;
  std::vector<KirbyMove> transcript;
};

/// Even-diagonal presentation of the same manifold, reached purely by Kirby moves.
///
/// A vector e characteristic mod 2 (L·e ≡ diag L) is realized as one component by
/// sliding; ±1 components are bordered on and slid under it until its framing is ±1;
/// every other component is then slid off it, which flips exactly the odd framings,
/// and the isolated ±1 component is removed.
EvenizeResult evenize(const LinkingMatrix& l);

/// K = C + ᵗC.
EvenSymMatrix coupling_to_even(const CouplingMatrix& c);

}  // namespace abelcs
