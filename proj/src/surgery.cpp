#include "abelcs/surgery.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

namespace abelcs {

CouplingMatrix::CouplingMatrix(IntMatrix c) : c_(std::move(c)) {
  if (!c_.is_square()) throw PreconditionError("coupling matrix must be square");
}

EvenSymMatrix::EvenSymMatrix(SymIntMatrix k) : k_(std::move(k)) {
  if (!k_.is_even()) throw PreconditionError("matrix has an odd diagonal entry");
}

LinkingMatrix unknot(const Integer& framing) { return LinkingMatrix{{framing}}; }

LinkingMatrix hopf(const Integer& f1, const Integer& f2) { return LinkingMatrix{{f1, 1}, {1, f2}}; }

LinkingMatrix borromean() { return LinkingMatrix(SymIntMatrix::zero(3)); }

LinkingMatrix preset(std::string_view name, std::span<const Integer> params) {
  if (name == "unknot" && params.size() == 1) return unknot(params[0]);
  if (name == "hopf" && params.size() == 2) return hopf(params[0], params[1]);
  if (name == "borromean" && params.empty()) return borromean();
  throw PreconditionError("unknown preset '" + std::string(name) + "' with " +
                          std::to_string(params.size()) + " parameter(s)");
}

namespace {

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("Kirby move sign must be +1 or -1");
}

}  // namespace

LinkingMatrix kirby1(const LinkingMatrix& l, int sign) {
  check_sign(sign);
  IntMatrix b(1, 1);
  b(0, 0) = sign;
  return LinkingMatrix(direct_sum(l.matrix(), b));
}

LinkingMatrix kirby1_inverse(const LinkingMatrix& l, std::size_t index) {
  const std::size_t n = l.size();
  if (index >= n) throw PreconditionError("component index out of range");
  if (abs(l(index, index)) != 1) throw PreconditionError("component framing is not +1 or -1");
  for (std::size_t j = 0; j < n; ++j)
    if (j != index && l(index, j) != 0) throw PreconditionError("component is linked with another component");
  IntMatrix out(n - 1, n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == index) continue;
    for (std::size_t j = 0, oj = 0; j < n; ++j) {
      if (j == index) continue;
      out(oi, oj++) = l(i, j);
    }
    ++oi;
  }
  return LinkingMatrix(std::move(out));
}

IntMatrix slide_matrix(std::size_t n, std::size_t i0, std::size_t j0, int sign) {
  IntMatrix p = IntMatrix::identity(n);
  p(j0, i0) = sign;
  return p;
}

LinkingMatrix kirby2(const LinkingMatrix& l, std::size_t i0, std::size_t j0, int sign) {
  check_sign(sign);
  const std::size_t n = l.size();
  if (i0 >= n || j0 >= n) throw PreconditionError("component index out of range");
  if (i0 == j0) throw PreconditionError("cannot slide a component over itself");
  IntMatrix m = l.matrix();
  // col i0 += sign * col j0, then row i0 += sign * row j0
  for (std::size_t r = 0; r < n; ++r) m(r, i0) += sign * m(r, j0);
  for (std::size_t c = 0; c < n; ++c) m(i0, c) += sign * m(j0, c);
  return LinkingMatrix(std::move(m));
}

LinkingMatrix apply(const LinkingMatrix& l, const KirbyMove& move) {
  switch (move.kind) {
    case KirbyMove::Kind::add:
      return kirby1(l, move.sign);
    case KirbyMove::Kind::remove:
      return kirby1_inverse(l, move.index);
    case KirbyMove::Kind::slide:
      return kirby2(l, move.i0, move.j0, move.sign);
  }
  throw std::logic_error("unknown Kirby move kind");
}

namespace {

using Bits = std::vector<std::uint8_t>;

bool odd(const Integer& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }

// Solutions of L·e ≡ diag(L) (mod 2): one particular solution plus a kernel basis.
// A solution always exists for symmetric L.
std::pair<Bits, std::vector<Bits>> characteristic_solutions(const LinkingMatrix& l) {
  const std::size_t n = l.size();
  std::vector<Bits> rows(n, Bits(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = odd(l(i, j));
    rows[i][n] = odd(l(i, i));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && !rows[p][c]) ++p;
    if (p == n) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && rows[i][c])
        for (std::size_t k = c; k <= n; ++k) rows[i][k] ^= rows[r][k];
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (rows[i][n]) throw std::logic_error("no characteristic vector mod 2");

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;

  Bits particular(n, 0);
  for (std::size_t i = 0; i < r; ++i) particular[pivot_col[i]] = rows[i][n];

  std::vector<Bits> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Bits k(n, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < r; ++i) k[pivot_col[i]] = rows[i][f];
    kernel.push_back(std::move(k));
  }
  return {std::move(particular), std::move(kernel)};
}

// Number of ±1 components needed to bring framing f to ±1.
Integer auxiliary_count(const Integer& f) {
  if (f >= 1) return f - 1;
  if (f <= -1) return -f - 1;
  return 1;
}

struct SlidePlan {
  std::size_t pivot = 0;
  std::vector<std::pair<std::size_t, int>> slides;  // (component, sign) slid under the pivot
  Integer aux;
};

// Among characteristic vectors (kernel cosets and signs of the lift, where small enough
// to enumerate), pick the one whose realized framing is closest to ±1.
SlidePlan plan_pivot(const LinkingMatrix& l) {
  const auto [particular, kernel] = characteristic_solutions(l);
  const std::size_t n = l.size();
  const std::size_t kernel_combos = kernel.size() <= 6 ? (std::size_t{1} << kernel.size()) : 1;

  std::optional<SlidePlan> best;
  for (std::size_t mask = 0; mask < kernel_combos; ++mask) {
    Bits e = particular;
    for (std::size_t b = 0; b < kernel.size(); ++b)
      if (mask >> b & 1)
        for (std::size_t i = 0; i < n; ++i) e[i] ^= kernel[b][i];
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) support.push_back(i);
    if (support.empty()) continue;

    const std::size_t free_signs = support.size() - 1;
    const std::size_t sign_combos = free_signs <= 12 ? (std::size_t{1} << free_signs) : 1;
    for (std::size_t sm = 0; sm < sign_combos; ++sm) {
      std::vector<int> s(support.size(), 1);
      for (std::size_t k = 1; k < support.size(); ++k) s[k] = (sm >> (k - 1) & 1) ? -1 : 1;
      Integer f = 0;
      for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t b = 0; b < support.size(); ++b) f += s[a] * s[b] * l(support[a], support[b]);
      Integer aux = auxiliary_count(f);
      if (best && aux >= best->aux) continue;
      SlidePlan plan;
      plan.pivot = support[0];
      for (std::size_t k = 1; k < support.size(); ++k) plan.slides.emplace_back(support[k], s[k]);
      plan.aux = aux;
      best = std::move(plan);
    }
  }
  if (!best) throw std::logic_error("characteristic vector is zero for an odd matrix");
  return *best;
}

}  // namespace

EvenizeResult evenize(const LinkingMatrix& l) {
  EvenizeResult out{l, {}};
  if (l.is_even()) return out;
  auto step = [&out](const KirbyMove& m) {
    out.result = apply(out.result, m);
    out.transcript.push_back(m);
  };

  const SlidePlan plan = plan_pivot(l);
  const std::size_t p = plan.pivot;
  for (const auto& [j, s] : plan.slides) step(KirbyMove::slide(p, j, s));

  // Framing of the pivot is now v·L·v for the characteristic lift v; shift it to ±1.
  const int target = out.result(p, p) >= 1 ? 1 : -1;
  const int aux_sign = out.result(p, p) <= -1 ? 1 : -1;
  while (out.result(p, p) != target) {
    step(KirbyMove::add(aux_sign));
    step(KirbyMove::slide(p, out.result.size() - 1, 1));
  }

  // Slide everything off the pivot; entry (x, p) moves by ±framing(p) per slide.
  for (std::size_t x = 0; x < out.result.size(); ++x) {
    if (x == p) continue;
    while (out.result(x, p) != 0) {
      const int s = -sgn(out.result(x, p)) * target;
      step(KirbyMove::slide(x, p, s));
    }
  }
  step(KirbyMove::remove(p));

  if (!out.result.is_even()) throw std::logic_error("evenize produced an odd diagonal");
  return out;
}

EvenSymMatrix coupling_to_even(const CouplingMatrix& c) {
  return EvenSymMatrix(SymIntMatrix(c.matrix() + c.matrix().transpose()));
}

}  // namespace abelcs
