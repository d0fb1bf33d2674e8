#include "hillrep/numeric.hpp"

#include <algorithm>
#include <limits>

#include "hillrep/tensorops.hpp"

namespace hillrep {

namespace {

Index rank_from_values(const RealVector& s, double rel_tol) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return r;
}

}  // namespace

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

Index numerical_rank(const ComplexMatrix& a, double rel_tol) {
  return rank_from_values(singular_values(a), rel_tol);
}

ComplexMatrix null_space(const ComplexMatrix& a, double rel_tol) {
  if (a.cols() == 0) return ComplexMatrix(0, 0);
  if (a.rows() == 0) return ComplexMatrix::Identity(a.cols(), a.cols());
  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const Index r = rank_from_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(a.cols() - r);
}

ComplexMatrix truncated_pinv_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                                   Index rank) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("truncated_pinv_solve: row counts differ");
  }
  if (rank == 0 || a.size() == 0) return ComplexMatrix::Zero(a.cols(), b.cols());
  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index r = std::min<Index>(rank, svd.singularValues().size());
  const RealVector inv = svd.singularValues().head(r).cwiseInverse();
  return svd.matrixV().leftCols(r) * inv.asDiagonal() *
         (svd.matrixU().leftCols(r).adjoint() * b);
}

ComplexMatrix least_squares(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("least_squares: row counts differ");
  }
  if (a.cols() == 0) return ComplexMatrix::Zero(0, b.cols());
  return a.colPivHouseholderQr().solve(b);
}

double projection_residual(const ComplexMatrix& a, const ComplexMatrix& b,
                           double rel_tol) {
  const double scale = b.norm();
  if (scale == 0.0) return 0.0;
  if (a.cols() == 0) return 1.0;
  const Index r = numerical_rank(a, rel_tol);
  const ComplexMatrix x = truncated_pinv_solve(a, b, r);
  return (a * x - b).norm() / scale;
}

double inverse_condition(const ComplexMatrix& a) {
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  if (a.rows() != a.cols() && s.size() < std::min(a.rows(), a.cols())) return 0.0;
  return s(s.size() - 1) / s(0);
}

double hermitian_deviation(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("hermitian_deviation: matrix is not square");
  }
  return max_abs(a - a.adjoint());
}

}  // namespace hillrep
