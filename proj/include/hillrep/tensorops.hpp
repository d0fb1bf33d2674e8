#pragma once

// Elementary kernels: column-stacking vectorization, Kronecker and Hadamard
// products, the trace inner product, the canonical shuffle and the block
// "sum-circ" contraction.  Everything is templated on the Eigen expression
// type so the same code serves real and complex matrices.

#include <string>

#include "hillrep/types.hpp"

namespace hillrep {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

inline void require_same_shape(Index r1, Index c1, Index r2, Index c2,
                               const char* what) {
  if (r1 != r2 || c1 != c2) {
    throw DimensionMismatch(std::string(what) + ": shapes " +
                            std::to_string(r1) + "x" + std::to_string(c1) +
                            " and " + std::to_string(r2) + "x" +
                            std::to_string(c2) + " differ");
  }
}

}  // namespace detail

/// Column-stacking vectorization: vec(T)[j*rows + i] = T(i, j).
template <typename Derived>
VectorX<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& t) {
  return t.reshaped();
}

/// Inverse of vec for a rows x cols target.
template <typename Derived>
MatrixX<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& x,
                                        Index rows, Index cols) {
  if (x.cols() != 1 || x.rows() != rows * cols) {
    throw DimensionMismatch("unvec: vector of length " +
                            std::to_string(x.size()) + " cannot be reshaped to " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
  return x.reshaped(rows, cols);
}

/// Kronecker product [a_ij B].
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                      typename DB::Scalar>::ReturnType;
  const Index br = b.rows();
  const Index bc = b.cols();
  MatrixX<Scalar> out(a.rows() * br, a.cols() * bc);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

template <typename DA, typename DB>
auto hadamard(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "hadamard");
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                      typename DB::Scalar>::ReturnType;
  return MatrixX<Scalar>(a.cwiseProduct(b));
}

/// Trace inner product <A, B> = trace(A B^*), evaluated as <vec A, vec B>.
template <typename DA, typename DB>
auto trace_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "trace_inner");
  // Eigen's dot conjugates its left operand.
  return b.reshaped().dot(a.reshaped());
}

template <typename Scalar = Complex>
MatrixX<Scalar> elementary(Index i, Index j, Index rows, Index cols) {
  MatrixX<Scalar> e = MatrixX<Scalar>::Zero(rows, cols);
  e(i, j) = Scalar(1);
  return e;
}

template <typename Scalar = Complex>
VectorX<Scalar> unit_vector(Index j, Index len) {
  VectorX<Scalar> e = VectorX<Scalar>::Zero(len);
  e(j) = Scalar(1);
  return e;
}

/// Canonical shuffle: the n^2 x n^2 permutation with shuffle(n) (z (x) x) = x (x) z.
template <typename Scalar = Complex>
MatrixX<Scalar> shuffle(Index n) {
  MatrixX<Scalar> c = MatrixX<Scalar>::Zero(n * n, n * n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      c(b * n + a, a * n + b) = Scalar(1);
    }
  }
  return c;
}

/// Sum_{i,j} C(i,j) V_ij for the r x r blocks V_ij of an (mr) x (mr) matrix,
/// evaluated through the Hadamard contraction
///   (1_m (x) I_r)^* ((C (x) ones_r) o V) (1_m (x) I_r).
template <typename DC, typename DV>
auto sum_circ(const Eigen::MatrixBase<DC>& c, const Eigen::MatrixBase<DV>& v) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DC::Scalar,
                                                      typename DV::Scalar>::ReturnType;
  const Index m = c.rows();
  if (c.cols() != m || m == 0 || v.rows() != v.cols() || v.rows() % m != 0) {
    throw DimensionMismatch("sum_circ: C must be m x m and V must be (mr) x (mr)");
  }
  const Index r = v.rows() / m;
  const MatrixX<Scalar> stack =
      kron(VectorX<Scalar>::Ones(m), MatrixX<Scalar>::Identity(r, r));
  const MatrixX<Scalar> weighted =
      hadamard(kron(c.template cast<Scalar>(), MatrixX<Scalar>::Ones(r, r)),
               v.template cast<Scalar>());
  return MatrixX<Scalar>(stack.adjoint() * weighted * stack);
}

/// Largest absolute entry; zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// ||X - Y||_F / max(||X||_F, ||Y||_F), zero when both vanish.
template <typename DX, typename DY>
double relative_difference(const Eigen::MatrixBase<DX>& x,
                           const Eigen::MatrixBase<DY>& y) {
  detail::require_same_shape(x.rows(), x.cols(), y.rows(), y.cols(),
                             "relative_difference");
  const double scale = std::max(x.norm(), y.norm());
  if (scale == 0.0) return 0.0;
  return (x - y).norm() / scale;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const auto x = m(i, j);
      if (!std::isfinite(std::real(x)) || !std::isfinite(std::imag(x))) return false;
    }
  }
  return true;
}

}  // namespace hillrep
