#include "hillrep/linmap.hpp"

#include <algorithm>
#include <string>

#include "hillrep/numeric.hpp"
#include "hillrep/random.hpp"
#include "hillrep/tensorops.hpp"

namespace hillrep {

namespace {

Field detect_field(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j).imag() != 0.0) return Field::Complex;
    }
  }
  return Field::Real;
}

std::string shape_string(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

BlockShape square_shape(Index n, Index q) { return {n, q, n, q}; }

void require_input(const LinearMatrixMap& map, const ComplexMatrix& v) {
  if (v.rows() != map.q() || v.cols() != map.q()) {
    throw DimensionMismatch("apply: expected a " + shape_string(map.q(), map.q()) +
                            " argument, got " + shape_string(v.rows(), v.cols()));
  }
}

}  // namespace

ChoiMatrix::ChoiMatrix(ComplexMatrix m, Index n, Index q)
    : m_(std::move(m)), n_(n), q_(q) {
  if (n < 1 || q < 1 || m_.rows() != n * q || m_.cols() != n * q) {
    throw DimensionMismatch("ChoiMatrix: expected " + shape_string(n * q, n * q) +
                            ", got " + shape_string(m_.rows(), m_.cols()));
  }
  if (!all_finite(m_)) throw NonFiniteEntry("ChoiMatrix: non-finite entry");
}

LinearMatrixMap::LinearMatrixMap(ComplexMatrix l, Index n, Index q)
    : l_(std::move(l)), n_(n), q_(q), field_(Field::Complex) {
  if (n < 1 || q < 1 || l_.rows() != n * n || l_.cols() != q * q) {
    throw DimensionMismatch("LinearMatrixMap: expected a " +
                            shape_string(n * n, q * q) + " matricization, got " +
                            shape_string(l_.rows(), l_.cols()));
  }
  if (!all_finite(l_)) throw NonFiniteEntry("LinearMatrixMap: non-finite entry");
  field_ = detect_field(l_);
}

LinearMatrixMap from_matricization(ComplexMatrix l, Index n, Index q) {
  return LinearMatrixMap(std::move(l), n, q);
}

LinearMatrixMap from_choi(const ChoiMatrix& c) {
  return LinearMatrixMap(lambda_inverse(c.matrix(), square_shape(c.n(), c.q())),
                         c.n(), c.q());
}

ChoiMatrix choi(const LinearMatrixMap& map) {
  return ChoiMatrix(lambda(map.matricization(), square_shape(map.n(), map.q())),
                    map.n(), map.q());
}

ComplexMatrix choi_from_matricization(const ComplexMatrix& l, Index n, Index p,
                                      Index q, Index r) {
  return lambda(l, BlockShape{n, q, p, r});
}

ComplexMatrix matricization_from_choi(const ComplexMatrix& c, Index n, Index p,
                                      Index q, Index r) {
  return lambda_inverse(c, BlockShape{n, q, p, r});
}

ComplexMatrix apply(const LinearMatrixMap& map, const ComplexMatrix& v) {
  require_input(map, v);
  return unvec(map.matricization() * vec(v), map.n(), map.n());
}

ComplexMatrix apply_via_choi_sum(const LinearMatrixMap& map, const ComplexMatrix& v) {
  require_input(map, v);
  const ChoiMatrix c = choi(map);
  ComplexMatrix out = ComplexMatrix::Zero(map.n(), map.n());
  for (Index j = 0; j < map.q(); ++j) {
    for (Index i = 0; i < map.q(); ++i) out += v(i, j) * c.block(i, j);
  }
  return out;
}

ComplexMatrix apply_via_hadamard(const LinearMatrixMap& map, const ComplexMatrix& v) {
  require_input(map, v);
  const Index n = map.n();
  const Index q = map.q();
  const ComplexMatrix stack =
      kron(ComplexVector::Ones(q), ComplexMatrix::Identity(n, n));
  const ComplexMatrix masked =
      hadamard(choi(map).matrix(), kron(v, ComplexMatrix::Ones(n, n)));
  return stack.transpose() * masked * stack;
}

StarLinearity star_linearity(const LinearMatrixMap& map, double tol) {
  StarLinearity out;
  out.choi_deviation = hermitian_deviation(choi(map).matrix());
  out.shuffle_deviation =
      shuffle_hermiticity_deviation(map.matricization(), map.n(), map.q());
  out.choi_hermitian = out.choi_deviation <= tol;
  out.shuffle_identity = out.shuffle_deviation <= tol;
  return out;
}

bool is_star_linear(const LinearMatrixMap& map, double tol) {
  const StarLinearity s = star_linearity(map, tol);
  return s.choi_hermitian && s.shuffle_identity;
}

bool is_hermitian_preserving(const LinearMatrixMap& map, int trials, std::uint64_t seed,
                             std::optional<Field> field, double tol) {
  if (trials < 1) throw Error("is_hermitian_preserving: trials must be >= 1");
  const Field f = field.value_or(map.field());
  const Index q = map.q();

  const auto preserves = [&](const ComplexMatrix& v) {
    const ComplexMatrix out = apply(map, v);
    return hermitian_deviation(out) <= tol * std::max(1.0, max_abs(out));
  };

  for (Index i = 0; i < q; ++i) {
    for (Index j = i; j < q; ++j) {
      ComplexMatrix sym = elementary(i, j, q, q) + elementary(j, i, q, q);
      if (i == j) sym /= 2.0;
      if (!preserves(sym)) return false;
      if (f == Field::Complex && i != j) {
        const Complex iu(0.0, 1.0);
        const ComplexMatrix skew = iu * elementary(i, j, q, q) - iu * elementary(j, i, q, q);
        if (!preserves(skew)) return false;
      }
    }
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix v = rng.hermitian(q);
    if (f == Field::Real) v = v.real().cast<Complex>();
    if (!preserves(v)) return false;
  }
  return true;
}

LinearMatrixMap random_star_linear(Index n, Index q, Index rank, std::uint64_t seed) {
  if (n < 1 || q < 1) throw DimensionMismatch("random_star_linear: n, q must be >= 1");
  const Index dim = n * q;
  if (rank < 1 || rank > dim) {
    throw InvalidRank("random_star_linear: rank " + std::to_string(rank) +
                      " outside [1, " + std::to_string(dim) + "]");
  }
  Rng rng(seed);
  const ComplexMatrix g = rng.complex_matrix(dim, rank);
  const ComplexMatrix basis =
      Eigen::HouseholderQR<ComplexMatrix>(g).householderQ() *
      ComplexMatrix::Identity(dim, rank);

  RealVector weights(rank);
  for (Index k = 0; k < rank; ++k) {
    const double magnitude = rng.uniform(0.5, 2.0);
    weights(k) = rng.uniform() < 0.5 ? -magnitude : magnitude;
  }
  ComplexMatrix c = basis * weights.cast<Complex>().asDiagonal() * basis.adjoint();
  // Exact Hermiticity so every downstream symmetry holds bit for bit.
  for (Index j = 0; j < dim; ++j) {
    c(j, j) = Complex(c(j, j).real(), 0.0);
    for (Index i = 0; i < j; ++i) c(j, i) = std::conj(c(i, j));
  }
  return from_choi(ChoiMatrix(std::move(c), n, q));
}

LinearMatrixMap identity_map(Index n) {
  return LinearMatrixMap(ComplexMatrix::Identity(n * n, n * n), n, n);
}

LinearMatrixMap transpose_map(Index n) { return LinearMatrixMap(shuffle(n), n, n); }

LinearMatrixMap zero_map(Index n, Index q) {
  return LinearMatrixMap(ComplexMatrix::Zero(n * n, q * q), n, q);
}

}  // namespace hillrep
