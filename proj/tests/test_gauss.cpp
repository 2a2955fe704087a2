#include <doctest.h>

#include <cmath>
#include <numeric>

#include "abelcs/gauss.hpp"
#include "support.hpp"

using namespace abelcs;
using namespace abelcs::testing;

namespace {

// Classical quadratic Gauss sum Σ_{x mod p} e^{2πi·a·x²/p} built term by term.
CyclotomicSum classical_gauss_sum(long a, long p) {
  CyclotomicSum s;
  for (long x = 0; x < p; ++x) {
    Rational r(a * x * x, p);
    r.canonicalize();
    s.add(Phase(r));
  }
  return s;
}

LinkingForm random_form(Rng& rng, Integer max_order) {
  for (;;) {
    const LinkingMatrix l(random_symmetric(rng, uniform(rng, 1, 3), -5, 5));
    LinkingForm f = linking_form(l);
    if (f.t() > 0 && f.group.order() <= max_order) return f;
  }
}

}  // namespace

TEST_SUITE("gauss") {
  TEST_CASE("phase normalization and arithmetic") {
    CHECK(Phase(Rational(5, 4)).value() == Rational(1, 4));
    CHECK(Phase(Rational(-1, 3)).value() == Rational(2, 3));
    CHECK(Phase(Rational(3)).to_string() == "0");
    CHECK(Phase(Rational(-1, 2)).to_string() == "1/2");
    CHECK((Phase(Rational(2, 3)) + Phase(Rational(1, 2))).value() == Rational(1, 6));
    CHECK((-Phase(Rational(1, 5))).value() == Rational(4, 5));
  }

  TEST_CASE("cyclotomic sums keep multiplicities and drop zeros") {
    CyclotomicSum s;
    s.add(Phase(Rational(1, 2)), 2);
    s.add(Phase(Rational(-1, 2)), -2);
    CHECK(s.empty());
    s.add(Phase(Rational(1, 3)));
    s.add(Phase(Rational(0)), 3);
    CHECK(s.term_count() == 4);
    CHECK(conjugate(s).terms().at(Phase(Rational(2, 3))) == 1);
    CHECK(conjugate(conjugate(s)) == s);
    CHECK(CyclotomicSum::one().term_count() == 1);
  }

  TEST_CASE("numeric evaluation of classical Gauss sums") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      const auto g = numeric(classical_gauss_sum(1, p));
      const double root = std::sqrt(static_cast<double>(p));
      if (p % 4 == 1) {
        CHECK(std::abs(g - std::complex<double>(root, 0)) < 1e-12);
      } else {
        CHECK(std::abs(g - std::complex<double>(0, root)) < 1e-12);
      }
    }
    const ComplexValue v = eval_numeric(classical_gauss_sum(1, 5), 256);
    CHECK(v.precision() == 256);
    CHECK(v.error_bound < 1e-60);
  }

  TEST_CASE("exponent phase validates its input") {
    const EvenSymMatrix k{{2, 1}, {1, 4}};
    const LinkingForm f = ManifoldPresentation::lens(2, 1).form();
    const std::vector<Integer> u{1, 1};
    CHECK(exponent_phase(k, f, u) == Phase(Rational(0)));
    const std::vector<Integer> v{1, 0};
    CHECK(exponent_phase(k, f, v) == Phase(Rational(1, 2)));
    const std::vector<Integer> bad_len{1};
    CHECK_THROWS_AS(exponent_phase(k, f, bad_len), PreconditionError);
    const std::vector<Integer> bad_range{2, 0};
    CHECK_THROWS_AS(exponent_phase(k, f, bad_range), PreconditionError);
  }

  TEST_CASE("partition function of the RP3 example term by term") {
    const CyclotomicSum z = partition_function(EvenSymMatrix{{2, 1}, {1, 4}}, ManifoldPresentation::lens(2, 1).form());
    CyclotomicSum expected;
    expected.add(Phase(Rational(0)), 3);
    expected.add(Phase(Rational(1, 2)), 1);
    CHECK(z == expected);
    CHECK(std::abs(numeric(z) - 2.0) < 1e-12);
  }

  TEST_CASE("partition function agrees with a naive rational evaluation") {
    Rng rng(41);
    for (int trial = 0; trial < 80; ++trial) {
      const LinkingForm f = random_form(rng, 30);
      const std::size_t n = uniform(rng, 1, 2);
      if (enumeration_size(f.group.factors, n) > 4000) continue;
      const SymIntMatrix k = random_even_symmetric(rng, n, -6, 6);
      CHECK(partition_function(EvenSymMatrix(k), f) == naive_partition(k, f));
    }
  }

  TEST_CASE("partition function via exponent_phase") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
      const LinkingForm f = random_form(rng, 12);
      const EvenSymMatrix k(random_even_symmetric(rng, 2, -4, 4));
      std::vector<Integer> radices;
      for (int a = 0; a < 2; ++a)
        for (const auto& p : f.group.factors) radices.push_back(p);
      CyclotomicSum direct;
      for (const auto& u : box(radices)) direct.add(exponent_phase(k, f, u));
      CHECK(direct == partition_function(k, f));
    }
  }

  TEST_CASE("threaded enumeration matches the naive sum") {
    // |T|^n = 257^2 crosses the parallel threshold.
    const ManifoldPresentation m = ManifoldPresentation::lens(257, 3);
    const SymIntMatrix k{{2, 3}, {3, -4}};
    const CyclotomicSum fast = partition_function(EvenSymMatrix(k), m.form());
    CHECK(fast == naive_partition(k, m.form()));
    for (unsigned threads : {1u, 3u, 8u, 16u}) {
      set_enumeration_threads(threads);
      CHECK(partition_function(EvenSymMatrix(k), m.form()) == fast);
      CHECK(lattice_gauss_sum(SymIntMatrix{{2, 1}, {1, -2}}, SymIntMatrix{{257}}, 1) ==
            naive_lattice_sum(SymIntMatrix{{2, 1}, {1, -2}}, IntMatrix{{257}}, 1));
    }
    set_enumeration_threads(0);
  }

  TEST_CASE("large phase denominators use sparse counting") {
    // Q = −1/p with K = (2) gives the classical sum Σ e^{2πi·u²/p} = √p for a prime p ≡ 1 mod 4.
    const long p = 1048589;
    const CyclotomicSum z = partition_function(EvenSymMatrix{{2}}, ManifoldPresentation::lens(p, 1).form());
    CHECK(z.term_count() == p);
    CHECK(z.terms().size() == (p + 1) / 2);
    CHECK(std::abs(numeric(z) - std::sqrt(static_cast<double>(p))) < 1e-6);
  }

  TEST_CASE("closed form p·gcd(k, p) for the hyperbolic coupling") {
    for (long p = 1; p <= 12; ++p)
      for (long q = 1; q <= p; ++q) {
        if (std::gcd(p, q) != 1) continue;
        for (long k = 0; k <= 8; ++k) {
          const CouplingMatrix c{{0, k}, {0, 0}};
          const auto z = numeric(partition_function(c, ManifoldPresentation::lens(p, q)));
          CHECK(std::abs(z - std::complex<double>(p * std::gcd(k, p), 0)) < 1e-9);
        }
      }
  }

  TEST_CASE("budget and degenerate cases") {
    const LinkingForm f = ManifoldPresentation::lens(7, 1).form();
    const EvenSymMatrix k{{2}};
    CHECK_THROWS_AS(partition_function(k, f, 6), BudgetExceeded);
    CHECK(partition_function(k, f, 7).term_count() == 7);
    CHECK(partition_function(k, LinkingForm{}) == CyclotomicSum::one());
    CHECK(enumeration_size(std::vector<Integer>{Integer(1) << 40}, 2) == std::numeric_limits<std::uint64_t>::max());
    CHECK(enumeration_size(std::vector<Integer>{3, 5}, 2) == 225);
  }

  TEST_CASE("lattice Gauss sum agrees with naive coset enumeration") {
    Rng rng(43);
    int checked = 0;
    while (checked < 80) {
      const SymIntMatrix l = random_symmetric(rng, uniform(rng, 1, 2), -4, 4);
      const SymIntMatrix k0 = random_even_symmetric(rng, uniform(rng, 1, 2), -5, 5);
      const Integer det = abs(det_int(k0.matrix()));
      if (det == 0 || det > 40) continue;
      if (det.get_ui() > 12 && l.size() > 1) continue;
      ++checked;
      for (int sign : {1, -1}) CHECK(gauss_sum_over_lattice(l, EvenSymMatrix(k0), sign) == naive_lattice_sum(l, k0.matrix(), sign));
    }
  }

  TEST_CASE("lattice Gauss sum with an odd inner matrix") {
    Rng rng(44);
    int checked = 0;
    while (checked < 40) {
      const SymIntMatrix k = random_even_symmetric(rng, uniform(rng, 1, 2), -4, 4);
      const SymIntMatrix l0 = random_symmetric(rng, uniform(rng, 1, 2), -4, 4);
      const Integer det = abs(det_int(l0.matrix()));
      if (det == 0 || det > 12) continue;
      ++checked;
      CHECK(lattice_gauss_sum(k, l0, -1) == naive_lattice_sum(k, l0.matrix(), -1));
    }
    CHECK_THROWS_AS(lattice_gauss_sum(SymIntMatrix{{1}}, SymIntMatrix{{3}}, 1), PreconditionError);
    CHECK_THROWS_AS(lattice_gauss_sum(SymIntMatrix{{2}}, SymIntMatrix{{0}}, 1), PreconditionError);
    CHECK_THROWS_AS(lattice_gauss_sum(SymIntMatrix{{2}}, SymIntMatrix{{3}}, 2), PreconditionError);
  }

  TEST_CASE("magnitude law against the brute-force radical") {
    Rng rng(45);
    int checked = 0;
    while (checked < 30) {
      const LinkingForm f = random_form(rng, 20);
      const std::size_t n = uniform(rng, 1, 2);
      if (enumeration_size(f.group.factors, n) > 2000) continue;
      const SymIntMatrix k = random_even_symmetric(rng, n, -6, 6);
      if (det_int(k.matrix()) == 0) continue;
      ++checked;
      const auto z = numeric(partition_function(EvenSymMatrix(k), f));
      const double size = static_cast<double>(enumeration_size(f.group.factors, n));
      const auto rad = naive_radical_sum(k, f);
      CHECK(std::abs(std::norm(z) - size * rad.real()) < 1e-9 * std::max(1.0, size * size));
      CHECK(std::abs(rad.imag()) < 1e-9);
    }
  }

  TEST_CASE("deterministic output across runs") {
    const ManifoldPresentation m = ManifoldPresentation::lens(601, 17);
    const EvenSymMatrix k{{2, 1}, {1, 2}};
    const CyclotomicSum a = partition_function(k, m.form());
    for (int i = 0; i < 3; ++i) CHECK(partition_function(k, m.form()) == a);
  }
}
