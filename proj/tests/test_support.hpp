#pragma once

// Independent oracles and fixtures.  Everything here is written from the
// definitions with plain loops and avoids the library routine it checks.

#include <functional>
#include <vector>

#include "hillrep/hill.hpp"
#include "hillrep/linmap.hpp"
#include "hillrep/random.hpp"
#include "hillrep/reorder.hpp"
#include "hillrep/tensorops.hpp"

namespace hillrep::testing {

inline ComplexMatrix naive_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline ComplexVector naive_vec(const ComplexMatrix& t) {
  ComplexVector out(t.size());
  for (Index j = 0; j < t.cols(); ++j)
    for (Index i = 0; i < t.rows(); ++i) out(j * t.rows() + i) = t(i, j);
  return out;
}

inline ComplexMatrix naive_unvec(const ComplexVector& x, Index rows, Index cols) {
  ComplexMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = x(j * rows + i);
  return out;
}

inline ComplexMatrix naive_sum_circ(const ComplexMatrix& c, const ComplexMatrix& v) {
  const Index m = c.rows();
  const Index r = v.rows() / m;
  ComplexMatrix out = ComplexMatrix::Zero(r, r);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) out += c(i, j) * v.block(i * r, j * r, r, r);
  return out;
}

/// Column j*p + i is vec of block (i, j): the defining formula of the reordering.
inline ComplexMatrix formula_lambda(const ComplexMatrix& s, const BlockShape& shape) {
  ComplexMatrix out(shape.n * shape.q, shape.p * shape.r);
  for (Index i = 0; i < shape.p; ++i)
    for (Index j = 0; j < shape.r; ++j)
      out.col(j * shape.p + i) =
          naive_vec(s.block(i * shape.n, j * shape.q, shape.n, shape.q));
  return out;
}

/// Matricization of V -> f(V): column vec(E_ij) holds vec(f(E_ij)).
inline LinearMatrixMap map_from_function(
    Index n, Index q, const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  ComplexMatrix l(n * n, q * q);
  for (Index j = 0; j < q; ++j)
    for (Index i = 0; i < q; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(q, q);
      e(i, j) = 1.0;
      l.col(j * q + i) = naive_vec(f(e));
    }
  return LinearMatrixMap(l, n, q);
}

/// Choi matrix assembled blockwise as [f(E_ij)]_{i,j}.
inline ComplexMatrix definitional_choi(const LinearMatrixMap& map) {
  const Index n = map.n();
  const Index q = map.q();
  ComplexMatrix out(n * q, n * q);
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(q, q);
      e(i, j) = 1.0;
      out.block(i * n, j * n, n, n) = naive_unvec(map.matricization() * naive_vec(e), n, n);
    }
  return out;
}

/// V -> diag(v11 + v12, v21 + v22, 0) on 2 x 2 real matrices.
inline LinearMatrixMap diag_sum_map() {
  return map_from_function(3, 2, [](const ComplexMatrix& v) {
    ComplexMatrix out = ComplexMatrix::Zero(3, 3);
    out(0, 0) = v(0, 0) + v(0, 1);
    out(1, 1) = v(1, 0) + v(1, 1);
    return out;
  });
}

/// Its 6 x 6 Choi matrix, written out by hand.
inline ComplexMatrix diag_sum_choi() {
  ComplexMatrix c = ComplexMatrix::Zero(6, 6);
  c(0, 0) = 1.0;
  c(0, 3) = 1.0;
  c(4, 1) = 1.0;
  c(4, 4) = 1.0;
  return c;
}

inline ComplexMatrix naive_hill_apply(const HillRepresentation& rep, const ComplexMatrix& v) {
  ComplexMatrix out = ComplexMatrix::Zero(rep.n, rep.n);
  for (Index k = 0; k < rep.m(); ++k)
    for (Index l = 0; l < rep.m(); ++l)
      out += rep.hill(k, l) * rep.factors[l] * v * rep.factors[k].adjoint();
  return out;
}

inline ComplexMatrix naive_reconstruct(const HillRepresentation& rep) {
  ComplexMatrix out = ComplexMatrix::Zero(rep.n * rep.n, rep.q * rep.q);
  for (Index k = 0; k < rep.m(); ++k)
    for (Index l = 0; l < rep.m(); ++l)
      out += rep.hill(k, l) * naive_kron(rep.factors[k].conjugate(), rep.factors[l]);
  return out;
}

/// Choi matrix with a random non-Hermitian perturbation of size eps.
inline LinearMatrixMap perturbed_map(Index n, Index q, std::uint64_t seed, double eps) {
  Rng rng(seed);
  ComplexMatrix c = rng.hermitian(n * q);
  ComplexMatrix g = rng.complex_matrix(n * q, n * q);
  c += eps * g;
  return from_choi(ChoiMatrix(c, n, q));
}

/// Hermitian-Choi map built from a random Hermitian matrix, exactly mirrored.
inline LinearMatrixMap hermitian_choi_map(Index n, Index q, std::uint64_t seed) {
  Rng rng(seed);
  return from_choi(ChoiMatrix(rng.hermitian(n * q), n, q));
}

/// Only the picked blocks are nonzero: l^{p_a}_{p_b} = M(a, b), M Hermitian.
inline LinearMatrixMap sparse_block_map(Index n, Index q, const std::vector<Cell>& picks,
                                        const ComplexMatrix& m) {
  ComplexMatrix l = ComplexMatrix::Zero(n * n, q * q);
  for (std::size_t a = 0; a < picks.size(); ++a)
    for (std::size_t b = 0; b < picks.size(); ++b)
      l(picks[a].row * n + picks[b].row, picks[a].col * q + picks[b].col) =
          m(static_cast<Index>(a), static_cast<Index>(b));
  return LinearMatrixMap(l, n, q);
}

/// Every block equals one of m picked blocks: l^{ij}_{rs} = M(kappa(ij), kappa(rs)).
/// kappa lists, in row-major cell order, the index of the block each cell copies.
inline LinearMatrixMap repeated_block_map(Index n, Index q, const std::vector<Index>& kappa,
                                          const ComplexMatrix& m) {
  ComplexMatrix l(n * n, q * q);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < q; ++j)
      for (Index r = 0; r < n; ++r)
        for (Index s = 0; s < q; ++s)
          l(i * n + r, j * q + s) = m(kappa[i * q + j], kappa[r * q + s]);
  return LinearMatrixMap(l, n, q);
}

/// Invertible random Hermitian matrix (eigenvalues bounded away from 0).
inline ComplexMatrix random_invertible_hermitian(Index m, Rng& rng) {
  const ComplexMatrix g = rng.complex_matrix(m, m);
  const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
  RealVector d(m);
  for (Index k = 0; k < m; ++k) d(k) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
  ComplexMatrix h = q * d.cast<Complex>().asDiagonal() * q.adjoint();
  for (Index j = 0; j < m; ++j) {
    h(j, j) = h(j, j).real();
    for (Index i = 0; i < j; ++i) h(j, i) = std::conj(h(i, j));
  }
  return h;
}

inline bool contains_value(const ComplexMatrix& h, Complex z) {
  for (Index j = 0; j < h.cols(); ++j)
    for (Index i = 0; i < h.rows(); ++i)
      if (h(i, j) == z) return true;
  return false;
}

}  // namespace hillrep::testing
