#include "hillrep/reorder.hpp"

#include <algorithm>

namespace hillrep {

namespace {

void require_square_blocks(const ComplexMatrix& s, Index n, Index q, const char* what) {
  if (n < 1 || q < 1 || s.rows() != n * n || s.cols() != q * q) {
    throw DimensionMismatch(std::string(what) + ": expected an n^2 x q^2 matrix");
  }
}

}  // namespace

bool lambda_entrywise_oracle(const ComplexMatrix& s, const ComplexMatrix& r,
                             const BlockShape& shape) {
  shape.validate();
  if (s.rows() != shape.source_rows() || s.cols() != shape.source_cols() ||
      r.rows() != shape.target_rows() || r.cols() != shape.target_cols()) {
    throw DimensionMismatch("lambda_entrywise_oracle: shapes do not match BlockShape");
  }
  const auto [n, q, p, rr] = shape;
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < rr; ++j) {
      const ComplexMatrix sij = s.block(i * n, j * q, n, q);
      for (Index l = 0; l < q; ++l) {
        const ComplexMatrix rlj = r.block(l * n, j * p, n, p);
        for (Index k = 0; k < n; ++k) {
          if (sij(k, l) != rlj(k, i)) return false;
        }
      }
    }
  }
  return true;
}

double shuffle_hermiticity_deviation(const ComplexMatrix& s, Index n, Index q) {
  require_square_blocks(s, n, q, "shuffle_hermiticity_deviation");
  const ComplexMatrix shuffled = shuffle(n) * s * shuffle(q);
  return max_abs(s.conjugate() - shuffled);
}

double entrywise_hermiticity_deviation(const ComplexMatrix& s, Index n, Index q) {
  require_square_blocks(s, n, q, "entrywise_hermiticity_deviation");
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < q; ++j) {
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < q; ++l) {
          const Complex v_ij_kl = s(i * n + k, j * q + l);
          const Complex v_kl_ij = s(k * n + i, l * q + j);
          worst = std::max(worst, std::abs(v_ij_kl - std::conj(v_kl_ij)));
        }
      }
    }
  }
  return worst;
}

bool is_lambda_image_hermitian(const ComplexMatrix& s, Index n, Index q, double tol) {
  const bool by_shuffle = shuffle_hermiticity_deviation(s, n, q) <= tol;
  const bool by_entries = entrywise_hermiticity_deviation(s, n, q) <= tol;
  return by_shuffle && by_entries;
}

}  // namespace hillrep
