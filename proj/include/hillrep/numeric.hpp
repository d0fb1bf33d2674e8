#pragma once

// Rank-revealing helpers shared by the Hill construction.  All rank decisions
// go through numerical_rank so that one pipeline sees a single, consistent m.

#include "hillrep/types.hpp"

namespace hillrep {

/// Singular values in decreasing order.
RealVector singular_values(const ComplexMatrix& a);

/// Count of singular values strictly above rel_tol * sigma_max (0 for a zero
/// or empty matrix).
Index numerical_rank(const ComplexMatrix& a, double rel_tol = kDefaultRankTol);

/// Orthonormal basis (as columns) of the null space of a, using the same
/// rank rule as numerical_rank.
ComplexMatrix null_space(const ComplexMatrix& a, double rel_tol = kDefaultRankTol);

/// Minimum-norm least-squares solution of a x = b with the SVD truncated to
/// exactly `rank` singular triplets.
ComplexMatrix truncated_pinv_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                                   Index rank);

/// Least-squares solution of a x = b for full-column-rank a (Householder QR).
ComplexMatrix least_squares(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||A A^+ B - B||_F / max(||B||_F, tiny): how far the columns of b stick out
/// of the column space of a.
double projection_residual(const ComplexMatrix& a, const ComplexMatrix& b,
                           double rel_tol = kDefaultRankTol);

/// sigma_min / sigma_max; 0 for rank-deficient or empty input.
double inverse_condition(const ComplexMatrix& a);

/// max |A - A^*|.
double hermitian_deviation(const ComplexMatrix& a);

}  // namespace hillrep
