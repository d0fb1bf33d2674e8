#pragma once

// The block reordering Lambda_{(n,q)}^{(p,r)}: an (np) x (qr) matrix viewed as
// a p x r grid of n x q blocks S_ij is sent to the (nq) x (pr) matrix whose
// column j*p + i is vec(S_ij).  It is a pure entry permutation,
//
//   R(l*n + k, j*p + i) = S(i*n + k, j*q + l),
//
// so round trips are bit-exact.

#include <string>

#include "hillrep/tensorops.hpp"
#include "hillrep/types.hpp"

namespace hillrep {

struct BlockShape {
  Index n = 1;  // block rows
  Index q = 1;  // block cols
  Index p = 1;  // grid rows
  Index r = 1;  // grid cols

  Index source_rows() const { return n * p; }
  Index source_cols() const { return q * r; }
  Index target_rows() const { return n * q; }
  Index target_cols() const { return p * r; }

  /// Shape of the inverse reordering, Lambda_{(n,p)}^{(q,r)}.
  BlockShape inverse() const { return {n, p, q, r}; }

  void validate() const {
    if (n < 1 || q < 1 || p < 1 || r < 1) {
      throw DimensionMismatch("BlockShape: all of n, q, p, r must be positive");
    }
  }
};

template <typename Derived>
MatrixX<typename Derived::Scalar> lambda(const Eigen::MatrixBase<Derived>& s,
                                         const BlockShape& shape) {
  shape.validate();
  if (s.rows() != shape.source_rows() || s.cols() != shape.source_cols()) {
    throw DimensionMismatch("lambda: expected a " + std::to_string(shape.source_rows()) +
                            "x" + std::to_string(shape.source_cols()) + " matrix, got " +
                            std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  }
  const auto [n, q, p, r] = shape;
  MatrixX<typename Derived::Scalar> out(shape.target_rows(), shape.target_cols());
  for (Index j = 0; j < r; ++j) {
    for (Index i = 0; i < p; ++i) {
      for (Index l = 0; l < q; ++l) {
        for (Index k = 0; k < n; ++k) {
          out(l * n + k, j * p + i) = s(i * n + k, j * q + l);
        }
      }
    }
  }
  return out;
}

/// Inverse of lambda(., shape); itself the reordering Lambda_{(n,p)}^{(q,r)}.
template <typename Derived>
MatrixX<typename Derived::Scalar> lambda_inverse(const Eigen::MatrixBase<Derived>& r,
                                                 const BlockShape& shape) {
  return lambda(r, shape.inverse());
}

/// Entrywise check v_kl^{ij} == w_ki^{lj} between the blocks S_ij (n x q) of s
/// and the blocks R_lj (n x p) of r.  Exact comparison.
bool lambda_entrywise_oracle(const ComplexMatrix& s, const ComplexMatrix& r,
                             const BlockShape& shape);

/// max |conj(S) - C_n S C_q| for an n^2 x q^2 matrix S.
double shuffle_hermiticity_deviation(const ComplexMatrix& s, Index n, Index q);

/// max |v_kl^{ij} - conj(v_ij^{kl})| over the n x q blocks of S.
double entrywise_hermiticity_deviation(const ComplexMatrix& s, Index n, Index q);

/// Whether Lambda_{(n,q)}^{(n,q)}(S) is Hermitian, decided by the shuffle
/// identity conj(S) = C_n S C_q and by the entrywise condition; the two
/// verdicts coincide and both must hold.
bool is_lambda_image_hermitian(const ComplexMatrix& s, Index n, Index q,
                               double tol = kDefaultTol);

}  // namespace hillrep
