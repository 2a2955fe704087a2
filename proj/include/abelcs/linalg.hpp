// linalg.hpp: exact integer/rational linear algebra kernel.

#pragma once

#include <cstddef>

#include "abelcs/matrix.hpp"

namespace abelcs {

/// d = u·a·v with u, v unimodular and d diagonal, nonnegative, d_i | d_{i+1}.
/// Zero invariant factors come last.
struct SnfResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;

  /// Diagonal of d (length min(rows, cols)).
  std::vector<Integer> diagonal() const;
  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
};

/// Smith normal form. Pivots on the entry of smallest absolute value.
SnfResult smith_normal_form(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant. Throws PreconditionError if a is not square.
/// The empty matrix has determinant 1.
Integer det_int(const IntMatrix& a);

/// Exact inverse over Q. Throws PreconditionError if a is not square or is singular.
RatMatrix inverse_rational(const IntMatrix& a);

/// Inverse of a unimodular matrix, as an integer matrix.
IntMatrix inverse_unimodular(const IntMatrix& a);

/// Rank over Q.
std::size_t rank(const IntMatrix& a);

/// Positive minus negative inertia, by exact symmetric elimination over Q.
/// A zero diagonal with nonzero off-diagonal entry is eliminated as a
/// hyperbolic 2x2 block, contributing 0.
long signature(const SymIntMatrix& a);

IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
RatMatrix kron(const IntMatrix& a, const RatMatrix& b);
RatMatrix kron(const RatMatrix& a, const RatMatrix& b);

/// ᵗp·a·p = diag(a0, 0) with p unimodular, a0 nonsingular of size rank(a).
struct BlockDecomposition {
  IntMatrix p;
  SymIntMatrix a0;
  std::size_t rank = 0;
};

/// Nonsingular inputs come back with p = identity and a0 = a.
BlockDecomposition block_decompose(const SymIntMatrix& a);

}  // namespace abelcs
