#pragma once

#include <cstdint>
#include <random>

#include "hillrep/types.hpp"

namespace hillrep {

/// Deterministic pseudo-random stream.  Built on mt19937_64, whose output
/// sequence is fixed by the standard, with hand-rolled uniform and normal
/// transforms so that a seed produces the same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Index uniform_index(Index count);
  double normal();
  Complex complex_normal();

  ComplexMatrix complex_matrix(Index rows, Index cols);
  RealMatrix real_matrix(Index rows, Index cols);
  ComplexMatrix hermitian(Index n);
  ComplexVector complex_vector(Index len);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hillrep
