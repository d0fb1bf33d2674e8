#include "hillrep/random.hpp"

#include <cmath>
#include <numbers>

namespace hillrep {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Index Rng::uniform_index(Index count) {
  return static_cast<Index>(engine_() % static_cast<std::uint64_t>(count));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u = 1.0 - uniform();
  const double v = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

ComplexMatrix Rng::complex_matrix(Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  }
  return m;
}

RealMatrix Rng::real_matrix(Index rows, Index cols) {
  RealMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal();
  }
  return m;
}

ComplexMatrix Rng::hermitian(Index n) {
  const ComplexMatrix g = complex_matrix(n, n);
  ComplexMatrix h = g + g.adjoint();
  // Exact Hermiticity: mirror the upper triangle.
  for (Index j = 0; j < n; ++j) {
    h(j, j) = Complex(h(j, j).real(), 0.0);
    for (Index i = 0; i < j; ++i) h(j, i) = std::conj(h(i, j));
  }
  return h;
}

ComplexVector Rng::complex_vector(Index len) {
  ComplexVector v(len);
  for (Index i = 0; i < len; ++i) v(i) = complex_normal();
  return v;
}

}  // namespace hillrep
