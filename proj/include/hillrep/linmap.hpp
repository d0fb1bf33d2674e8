#pragma once

// Linear matrix maps F^{q x q} -> F^{n x n}.  The matricization L (n^2 x q^2,
// L vec(V) = vec(map(V))) is the stored form; the Choi matrix
// [map(E_ij)]_{i,j} (nq x nq) is derived from it by the reordering
// Lambda_{(n,q)}^{(n,q)}.

#include <cstdint>
#include <optional>

#include "hillrep/reorder.hpp"
#include "hillrep/types.hpp"

namespace hillrep {

/// Scalar field a map is considered over.  Decided at runtime: complex data
/// with all imaginary parts exactly zero is treated as real.
enum class Field { Real, Complex };

class ChoiMatrix {
 public:
  ChoiMatrix(ComplexMatrix m, Index n, Index q);

  Index n() const { return n_; }
  Index q() const { return q_; }
  const ComplexMatrix& matrix() const { return m_; }
  /// Block (i, j) = map(E_ij), an n x n matrix.
  ComplexMatrix block(Index i, Index j) const { return m_.block(i * n_, j * n_, n_, n_); }

 private:
  ComplexMatrix m_;
  Index n_;
  Index q_;
};

class LinearMatrixMap {
 public:
  LinearMatrixMap(ComplexMatrix l, Index n, Index q);

  Index n() const { return n_; }
  Index q() const { return q_; }
  const ComplexMatrix& matricization() const { return l_; }
  Field field() const { return field_; }

  /// Block L_ij (n x q) of the matricization, 0 <= i < n, 0 <= j < q.
  ComplexMatrix block(Index i, Index j) const { return l_.block(i * n_, j * q_, n_, q_); }
  /// l^{ij}_{kl}: entry (k, l) of block (i, j).
  Complex entry(Index i, Index j, Index k, Index l) const {
    return l_(i * n_ + k, j * q_ + l);
  }

 private:
  ComplexMatrix l_;
  Index n_;
  Index q_;
  Field field_;
};

LinearMatrixMap from_matricization(ComplexMatrix l, Index n, Index q);
LinearMatrixMap from_choi(const ChoiMatrix& c);
ChoiMatrix choi(const LinearMatrixMap& map);

/// Conversions for maps F^{q x r} -> F^{n x p}: matricization (np x qr) to
/// Choi matrix (nq x pr) and back.
ComplexMatrix choi_from_matricization(const ComplexMatrix& l, Index n, Index p,
                                      Index q, Index r);
ComplexMatrix matricization_from_choi(const ComplexMatrix& c, Index n, Index p,
                                      Index q, Index r);

/// map(V) = unvec(L vec(V)).
ComplexMatrix apply(const LinearMatrixMap& map, const ComplexMatrix& v);
/// map(V) = sum_ij v_ij Choi_ij.
ComplexMatrix apply_via_choi_sum(const LinearMatrixMap& map, const ComplexMatrix& v);
/// map(V) = (1_q (x) I_n)^T (Choi o (V (x) ones_n)) (1_q (x) I_n).
ComplexMatrix apply_via_hadamard(const LinearMatrixMap& map, const ComplexMatrix& v);

struct StarLinearity {
  double choi_deviation = 0.0;     // max |Choi - Choi^*|
  double shuffle_deviation = 0.0;  // max |conj(L) - C_n L C_q|
  bool choi_hermitian = false;
  bool shuffle_identity = false;
};

/// Both characterizations of *-linearity, evaluated independently.
StarLinearity star_linearity(const LinearMatrixMap& map, double tol = kDefaultTol);

/// True when the Choi matrix is Hermitian and conj(L) = C_n L C_q, each within
/// tol in max-norm.
bool is_star_linear(const LinearMatrixMap& map, double tol = kDefaultTol);

/// Whether map sends Hermitian matrices to Hermitian matrices over `field`
/// (default: map.field()).  Checks the spanning set E_ii, E_ij + E_ji and, over
/// C, i E_ij - i E_ji, which is conclusive by linearity, and then `trials`
/// seeded random Hermitian inputs.  Over C this is equivalent to *-linearity;
/// over R it is strictly weaker.
bool is_hermitian_preserving(const LinearMatrixMap& map, int trials, std::uint64_t seed,
                             std::optional<Field> field = std::nullopt,
                             double tol = kDefaultTol);

/// Seeded *-linear map whose Choi matrix is Q D Q^* with Q an nq x rank matrix
/// of orthonormal columns and D real diagonal with entries in +-[0.5, 2].
LinearMatrixMap random_star_linear(Index n, Index q, Index rank, std::uint64_t seed);

/// Common fixtures.
LinearMatrixMap identity_map(Index n);
LinearMatrixMap transpose_map(Index n);
LinearMatrixMap zero_map(Index n, Index q);

}  // namespace hillrep
