#pragma once

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hillrep {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance on max-norm deviations (Hermiticity, pattern equality).
inline constexpr double kDefaultTol = 1e-10;
// Relative tolerance on singular values for rank and span decisions.
inline constexpr double kDefaultRankTol = 1e-9;

// Zero-based (row, col) position, either of a block in a block matrix or of
// an entry inside a block.  Serialized 1-based.
struct Cell {
  Index row = 0;
  Index col = 0;
  auto operator<=>(const Cell&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteEntry : public Error {
 public:
  using Error::Error;
};

class InvalidRank : public Error {
 public:
  using Error::Error;
};

class NotStarLinear : public Error {
 public:
  using Error::Error;
};

class SpanDeficient : public Error {
 public:
  using Error::Error;
};

class BiorthogonalityViolation : public Error {
 public:
  using Error::Error;
};

class KernelMismatch : public Error {
 public:
  using Error::Error;
};

class DifferentMaps : public Error {
 public:
  using Error::Error;
};

class MissingProvenance : public Error {
 public:
  using Error::Error;
};

}  // namespace hillrep
