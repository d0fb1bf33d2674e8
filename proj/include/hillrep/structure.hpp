#pragma once

// Block-level versus entry-level structure of the matricization of a
// *-linear map.  With L = [L_ij] (blocks n x q) and E_ij = [l^{rs}_{ij}]_{r,s}
// (entry (i,j) gathered from every block), *-linearity gives
// E_ij = conj(L_ij), so any zero or equality pattern on the n x q grid holds
// for the blocks exactly when it holds inside every block.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hillrep/linmap.hpp"
#include "hillrep/types.hpp"

namespace hillrep {

enum class PatternKind {
  Diagonal,
  Lower,
  Upper,
  Band,
  Hollow,
  Toeplitz,
  Hankel,
  Circulant,
  Centrosymmetric,
  Symmetric,
  Hermitian,
};

/// A pattern on an n x q grid of cells: cells that must vanish and pairs of
/// cells that must coincide (up to conjugation of the second for Hermitian).
struct Pattern {
  PatternKind kind = PatternKind::Diagonal;
  Index rows = 0;
  Index cols = 0;
  Index bandwidth = 0;
  std::vector<Cell> zeros;
  std::vector<std::pair<Cell, Cell>> pairs;
  bool conjugate_pairs = false;
};

std::string to_string(PatternKind kind);
const std::vector<PatternKind>& all_pattern_kinds();
/// Circulant, symmetric and Hermitian need a square grid.
bool pattern_applies(PatternKind kind, Index rows, Index cols);

/// Band(d) asks for zeros where |i - j| > d.  Throws DimensionMismatch when
/// the kind needs a square grid and rows != cols.
Pattern make_pattern(PatternKind kind, Index rows, Index cols, Index bandwidth = 0);

using CellAccessor = std::function<ComplexMatrix(Index, Index)>;

/// The single predicate behind every structural check, evaluated on whatever
/// cells the accessor returns.  Max-norm comparisons against tol.
bool pattern_holds(const CellAccessor& cell, const Pattern& pattern, double tol = kDefaultTol);

/// E_ij = [l^{rs}_{ij}]_{r,s}, an n x q matrix.
ComplexMatrix entry_matrix(const LinearMatrixMap& map, Index i, Index j);

bool block_pattern_holds(const LinearMatrixMap& map, const Pattern& pattern,
                         double tol = kDefaultTol);
bool entry_pattern_holds(const LinearMatrixMap& map, const Pattern& pattern,
                         double tol = kDefaultTol);

struct DualityVerdict {
  bool block_level = false;
  bool entry_level = false;
  bool agrees() const { return block_level == entry_level; }
};

/// Block and entry verdicts for one pattern.  Throws NotStarLinear.
DualityVerdict pattern_duality(const LinearMatrixMap& map, const Pattern& pattern,
                               double tol = kDefaultTol);

/// L_ij = 0 for all (i,j) in cells  <=>  entry (i,j) of every block is 0.
/// Returns whether the two sides agree.  Throws NotStarLinear.
bool zero_pattern_dual(const LinearMatrixMap& map, const std::vector<Cell>& cells,
                       double tol = kDefaultTol);

/// L_a = L_b for all pairs  <=>  entries a and b agree in every block.
bool repeated_block_dual(const LinearMatrixMap& map,
                         const std::vector<std::pair<Cell, Cell>>& pairs,
                         double tol = kDefaultTol);

struct InnerProductPair {
  Complex blocks;   // <L_a, L_b>
  Complex entries;  // <E_a, E_b>, equal to conj(<L_a, L_b>) for *-linear maps
};

InnerProductPair block_entry_inner_products(const LinearMatrixMap& map, Cell a, Cell b);

/// L_a orthogonal to L_b  <=>  E_a orthogonal to E_b, where a product counts
/// as zero when |<X, Y>| <= tol * max(1, ||X|| ||Y||).  Returns whether the two
/// sides agree.  Throws NotStarLinear.
bool orthogonality_dual(const LinearMatrixMap& map, Cell a, Cell b, double tol = kDefaultTol);

/// H = [l^{i_k j_k}_{i_l j_l}]_{k,l}, read straight off the matricization.
/// Throws NotStarLinear, and SpanDeficient unless the picked blocks form a basis
/// of the block span.
ComplexMatrix hill_from_blocks_entries(const LinearMatrixMap& map,
                                       const std::vector<Cell>& picks,
                                       double tol = kDefaultRankTol,
                                       double star_tol = kDefaultTol);

struct StructureReport {
  bool star_linear = false;
  std::vector<std::string> block_patterns;
  std::vector<std::string> entry_patterns;
  bool duality_consistent = false;
};

/// Checks every applicable pattern at both levels.  Band is reported as
/// "band(d)" for the least d with 1 <= d < max(n, q) - 1 that holds, if any.
StructureReport analyze_structure(const LinearMatrixMap& map, double tol = kDefaultTol);

/// Seeded *-linear maps whose blocks satisfy a pattern, sampled uniformly
/// (Gaussian coefficients) from the real-linear space cut out by the
/// *-linearity relations and the pattern imposed at block level only.
class StructuredSampler {
 public:
  StructuredSampler(Index n, Index q, Pattern pattern);

  Index n() const { return n_; }
  Index q() const { return q_; }
  const Pattern& pattern() const { return pattern_; }
  /// Real dimension of the sampled space.
  Index dimension() const { return basis_.cols(); }
  LinearMatrixMap sample(std::uint64_t seed) const;

 private:
  Index n_;
  Index q_;
  Pattern pattern_;
  RealMatrix basis_;  // columns span [Re vec L; Im vec L] of admissible L
};

}  // namespace hillrep
