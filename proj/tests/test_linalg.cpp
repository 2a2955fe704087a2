#include <doctest.h>

#include "abelcs/linalg.hpp"
#include "support.hpp"

using namespace abelcs;
using namespace abelcs::testing;

namespace {

void check_snf_certificate(const IntMatrix& a) {
  const SnfResult r = smith_normal_form(a);
  CHECK(r.u * a * r.v == r.d);
  CHECK(abs(det_int(r.u)) == 1);
  CHECK(abs(det_int(r.v)) == 1);
  for (std::size_t i = 0; i < r.d.rows(); ++i)
    for (std::size_t j = 0; j < r.d.cols(); ++j)
      if (i != j) CHECK(r.d(i, j) == 0);
  const auto diag = r.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    CHECK(diag[i] >= 0);
    if (i + 1 < diag.size()) CHECK(divides(diag[i], diag[i + 1]));
  }
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("smith normal form of small fixed matrices") {
    const SnfResult r = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
    CHECK(r.diagonal() == std::vector<Integer>{2, 4});
    CHECK(smith_normal_form(IntMatrix{{-2}}).diagonal() == std::vector<Integer>{2});
    CHECK(smith_normal_form(IntMatrix(3, 3)).rank() == 0);
    CHECK(smith_normal_form(IntMatrix{{3, 1}, {1, 2}}).diagonal() == std::vector<Integer>{1, 5});
    CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diagonal() == std::vector<Integer>{1, 6});
    check_snf_certificate(IntMatrix{{0, 0}, {0, 5}});
    check_snf_certificate(IntMatrix(0, 0));
  }

  TEST_CASE("smith normal form certificates on random rectangular matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t m = uniform(rng, 1, 5), n = uniform(rng, 1, 5);
      check_snf_certificate(random_matrix(rng, m, n, -9, 9));
    }
  }

  TEST_CASE("determinant against cofactor expansion and products") {
    CHECK(det_int(IntMatrix(0, 0)) == 1);
    CHECK(det_int(IntMatrix{{2, 1}, {1, 4}}) == 7);
    CHECK(det_int(IntMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK_THROWS_AS(det_int(IntMatrix(2, 3)), PreconditionError);
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = uniform(rng, 1, 4);
      const IntMatrix a = random_matrix(rng, n, n, -6, 6);
      const IntMatrix b = random_matrix(rng, n, n, -6, 6);
      CHECK(det_int(a * b) == det_int(a) * det_int(b));
      const IntMatrix g = random_unimodular(rng, n);
      CHECK(abs(det_int(g)) == 1);
      CHECK(det_int(congruence(g, a)) == det_int(a));
    }
  }

  TEST_CASE("rational and unimodular inverses") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = uniform(rng, 1, 4);
      const IntMatrix a = random_matrix(rng, n, n, -6, 6);
      if (det_int(a) == 0) {
        CHECK_THROWS_AS(inverse_rational(a), PreconditionError);
        continue;
      }
      CHECK(to_rational(a) * inverse_rational(a) == RatMatrix::identity(n));
      const IntMatrix g = random_unimodular(rng, n);
      CHECK(g * inverse_unimodular(g) == IntMatrix::identity(n));
    }
  }

  TEST_CASE("rank agrees with the Smith normal form") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t m = uniform(rng, 1, 5), n = uniform(rng, 1, 5);
      IntMatrix a = random_matrix(rng, m, n, -2, 2);
      CHECK(rank(a) == smith_normal_form(a).rank());
    }
  }

  TEST_CASE("signature matches the floating eigenvalue oracle") {
    CHECK(signature(SymIntMatrix{{2, 1}, {1, 4}}) == 2);
    CHECK(signature(SymIntMatrix{{0, 1}, {1, 0}}) == 0);
    CHECK(signature(SymIntMatrix{{-2}}) == -1);
    CHECK(signature(SymIntMatrix::zero(3)) == 0);
    Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = uniform(rng, 1, 6);
      const SymIntMatrix a = random_symmetric(rng, n, -4, 4);
      CHECK(signature(a) == float_signature(a));
    }
  }

  TEST_CASE("signature is a congruence invariant") {
    Rng rng(16);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = uniform(rng, 1, 5);
      const SymIntMatrix a = random_symmetric(rng, n, -3, 3);
      const SymIntMatrix b(congruence(random_unimodular(rng, n), a.matrix()));
      CHECK(signature(a) == signature(b));
    }
  }

  TEST_CASE("kronecker product layout") {
    const IntMatrix k = kron(IntMatrix{{1, 2}}, IntMatrix{{0, 1}, {1, 0}});
    CHECK(k == IntMatrix{{0, 1, 0, 2}, {1, 0, 2, 0}});
  }

  TEST_CASE("block decomposition splits off the kernel") {
    Rng rng(17);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t n = uniform(rng, 1, 5);
      // Low-rank symmetric matrices: ᵗB·D·B with B of r < n rows.
      const std::size_t r = uniform(rng, 0, n);
      const IntMatrix b = random_matrix(rng, r, n, -2, 2);
      IntMatrix d(r, r);
      for (std::size_t i = 0; i < r; ++i) d(i, i) = uniform(rng, -3, 3);
      const SymIntMatrix a(b.transpose() * d * b);
      const BlockDecomposition bd = block_decompose(a);
      CHECK(abs(det_int(bd.p)) == 1);
      CHECK(bd.rank == rank(a.matrix()));
      CHECK(det_int(bd.a0.matrix()) != 0);
      IntMatrix expected(n, n);
      for (std::size_t i = 0; i < bd.rank; ++i)
        for (std::size_t j = 0; j < bd.rank; ++j) expected(i, j) = bd.a0(i, j);
      CHECK(congruence(bd.p, a.matrix()) == expected);
    }
  }

  TEST_CASE("symmetric matrix construction enforces symmetry") {
    CHECK_THROWS_AS(SymIntMatrix(IntMatrix{{1, 2}, {3, 4}}), PreconditionError);
    CHECK_THROWS_AS(SymIntMatrix(IntMatrix(2, 3)), PreconditionError);
    CHECK(SymIntMatrix{{2, 1}, {1, 4}}.is_even());
    CHECK_FALSE(SymIntMatrix{{1, 1}, {1, 4}}.is_even());
  }
}
