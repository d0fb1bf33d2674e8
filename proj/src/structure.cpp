#include "hillrep/structure.hpp"

#include <algorithm>
#include <map>

#include "hillrep/numeric.hpp"
#include "hillrep/random.hpp"
#include "hillrep/tensorops.hpp"

namespace hillrep {

namespace {

void require_star_linear(const LinearMatrixMap& map, double tol, const char* what) {
  if (!is_star_linear(map, tol)) {
    throw NotStarLinear(std::string(what) + ": structural duality needs a *-linear map");
  }
}

void require_cell(const Cell& c, Index rows, Index cols, const char* what) {
  if (c.row < 0 || c.row >= rows || c.col < 0 || c.col >= cols) {
    throw DimensionMismatch(std::string(what) + ": cell (" + std::to_string(c.row + 1) + "," +
                            std::to_string(c.col + 1) + ") outside the " +
                            std::to_string(rows) + "x" + std::to_string(cols) + " grid");
  }
}

// Pairs every cell with the first cell (row-major) sharing its key.
template <typename Key>
std::vector<std::pair<Cell, Cell>> class_pairs(Index rows, Index cols, Key key) {
  std::map<decltype(key(0, 0)), Cell> first;
  std::vector<std::pair<Cell, Cell>> pairs;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const auto [it, inserted] = first.emplace(key(i, j), Cell{i, j});
      if (!inserted) pairs.push_back({it->second, Cell{i, j}});
    }
  }
  return pairs;
}

template <typename Pred>
std::vector<Cell> cells_where(Index rows, Index cols, Pred pred) {
  std::vector<Cell> out;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (pred(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

bool negligible(Complex ip, const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
  return std::abs(ip) <= tol * std::max(1.0, x.norm() * y.norm());
}

}  // namespace

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Diagonal: return "diagonal";
    case PatternKind::Lower: return "lower_triangular";
    case PatternKind::Upper: return "upper_triangular";
    case PatternKind::Band: return "band";
    case PatternKind::Hollow: return "hollow";
    case PatternKind::Toeplitz: return "toeplitz";
    case PatternKind::Hankel: return "hankel";
    case PatternKind::Circulant: return "circulant";
    case PatternKind::Centrosymmetric: return "centrosymmetric";
    case PatternKind::Symmetric: return "symmetric";
    case PatternKind::Hermitian: return "hermitian";
  }
  return "unknown";
}

const std::vector<PatternKind>& all_pattern_kinds() {
  static const std::vector<PatternKind> kinds = {
      PatternKind::Diagonal,  PatternKind::Lower,           PatternKind::Upper,
      PatternKind::Band,      PatternKind::Hollow,          PatternKind::Toeplitz,
      PatternKind::Hankel,    PatternKind::Circulant,       PatternKind::Centrosymmetric,
      PatternKind::Symmetric, PatternKind::Hermitian};
  return kinds;
}

bool pattern_applies(PatternKind kind, Index rows, Index cols) {
  switch (kind) {
    case PatternKind::Circulant:
    case PatternKind::Symmetric:
    case PatternKind::Hermitian:
      return rows == cols;
    default:
      return true;
  }
}

Pattern make_pattern(PatternKind kind, Index rows, Index cols, Index bandwidth) {
  if (rows < 1 || cols < 1) throw DimensionMismatch("make_pattern: empty grid");
  if (!pattern_applies(kind, rows, cols)) {
    throw DimensionMismatch("make_pattern: " + to_string(kind) + " needs a square grid");
  }
  if (bandwidth < 0) throw DimensionMismatch("make_pattern: negative bandwidth");
  Pattern p;
  p.kind = kind;
  p.rows = rows;
  p.cols = cols;
  p.bandwidth = bandwidth;
  switch (kind) {
    case PatternKind::Diagonal:
      p.zeros = cells_where(rows, cols, [](Index i, Index j) { return i != j; });
      break;
    case PatternKind::Lower:
      p.zeros = cells_where(rows, cols, [](Index i, Index j) { return i < j; });
      break;
    case PatternKind::Upper:
      p.zeros = cells_where(rows, cols, [](Index i, Index j) { return i > j; });
      break;
    case PatternKind::Band:
      p.zeros = cells_where(rows, cols, [bandwidth](Index i, Index j) {
        return std::abs(i - j) > bandwidth;
      });
      break;
    case PatternKind::Hollow:
      p.zeros = cells_where(rows, cols, [](Index i, Index j) { return i == j; });
      break;
    case PatternKind::Toeplitz:
      p.pairs = class_pairs(rows, cols, [](Index i, Index j) { return i - j; });
      break;
    case PatternKind::Hankel:
      p.pairs = class_pairs(rows, cols, [](Index i, Index j) { return i + j; });
      break;
    case PatternKind::Circulant:
      p.pairs = class_pairs(rows, cols,
                            [rows](Index i, Index j) { return ((i - j) % rows + rows) % rows; });
      break;
    case PatternKind::Centrosymmetric:
      p.pairs = class_pairs(rows, cols, [rows, cols](Index i, Index j) {
        const Cell mirror{rows - 1 - i, cols - 1 - j};
        return std::min(Cell{i, j}, mirror);
      });
      break;
    case PatternKind::Symmetric:
    case PatternKind::Hermitian:
      for (Index i = 0; i < rows; ++i) {
        for (Index j = i; j < cols; ++j) {
          if (i != j || kind == PatternKind::Hermitian) p.pairs.push_back({{i, j}, {j, i}});
        }
      }
      p.conjugate_pairs = kind == PatternKind::Hermitian;
      break;
  }
  return p;
}

bool pattern_holds(const CellAccessor& cell, const Pattern& pattern, double tol) {
  std::vector<ComplexMatrix> cache(static_cast<std::size_t>(pattern.rows * pattern.cols));
  std::vector<bool> loaded(cache.size(), false);
  const auto get = [&](const Cell& c) -> const ComplexMatrix& {
    require_cell(c, pattern.rows, pattern.cols, "pattern_holds");
    const auto idx = static_cast<std::size_t>(c.row * pattern.cols + c.col);
    if (!loaded[idx]) {
      cache[idx] = cell(c.row, c.col);
      loaded[idx] = true;
    }
    return cache[idx];
  };
  for (const Cell& z : pattern.zeros) {
    if (max_abs(get(z)) > tol) return false;
  }
  for (const auto& [a, b] : pattern.pairs) {
    const ComplexMatrix& x = get(a);
    const ComplexMatrix& y = get(b);
    const double gap = pattern.conjugate_pairs ? max_abs(x - y.conjugate()) : max_abs(x - y);
    if (gap > tol) return false;
  }
  return true;
}

ComplexMatrix entry_matrix(const LinearMatrixMap& map, Index i, Index j) {
  require_cell({i, j}, map.n(), map.q(), "entry_matrix");
  ComplexMatrix out(map.n(), map.q());
  for (Index r = 0; r < map.n(); ++r) {
    for (Index s = 0; s < map.q(); ++s) out(r, s) = map.entry(r, s, i, j);
  }
  return out;
}

bool block_pattern_holds(const LinearMatrixMap& map, const Pattern& pattern, double tol) {
  if (pattern.rows != map.n() || pattern.cols != map.q()) {
    throw DimensionMismatch("block_pattern_holds: pattern grid does not match n x q");
  }
  return pattern_holds([&](Index i, Index j) { return map.block(i, j); }, pattern, tol);
}

bool entry_pattern_holds(const LinearMatrixMap& map, const Pattern& pattern, double tol) {
  if (pattern.rows != map.n() || pattern.cols != map.q()) {
    throw DimensionMismatch("entry_pattern_holds: pattern grid does not match n x q");
  }
  return pattern_holds([&](Index i, Index j) { return entry_matrix(map, i, j); }, pattern,
                       tol);
}

DualityVerdict pattern_duality(const LinearMatrixMap& map, const Pattern& pattern,
                               double tol) {
  require_star_linear(map, tol, "pattern_duality");
  return {block_pattern_holds(map, pattern, tol), entry_pattern_holds(map, pattern, tol)};
}

bool zero_pattern_dual(const LinearMatrixMap& map, const std::vector<Cell>& cells,
                       double tol) {
  Pattern p;
  p.rows = map.n();
  p.cols = map.q();
  p.zeros = cells;
  return pattern_duality(map, p, tol).agrees();
}

bool repeated_block_dual(const LinearMatrixMap& map,
                         const std::vector<std::pair<Cell, Cell>>& pairs, double tol) {
  Pattern p;
  p.rows = map.n();
  p.cols = map.q();
  p.pairs = pairs;
  return pattern_duality(map, p, tol).agrees();
}

InnerProductPair block_entry_inner_products(const LinearMatrixMap& map, Cell a, Cell b) {
  require_cell(a, map.n(), map.q(), "block_entry_inner_products");
  require_cell(b, map.n(), map.q(), "block_entry_inner_products");
  return {trace_inner(map.block(a.row, a.col), map.block(b.row, b.col)),
          trace_inner(entry_matrix(map, a.row, a.col), entry_matrix(map, b.row, b.col))};
}

bool orthogonality_dual(const LinearMatrixMap& map, Cell a, Cell b, double tol) {
  require_star_linear(map, tol, "orthogonality_dual");
  const InnerProductPair ip = block_entry_inner_products(map, a, b);
  const bool blocks = negligible(ip.blocks, map.block(a.row, a.col), map.block(b.row, b.col), tol);
  const bool entries = negligible(ip.entries, entry_matrix(map, a.row, a.col),
                                  entry_matrix(map, b.row, b.col), tol);
  return blocks == entries;
}

ComplexMatrix hill_from_blocks_entries(const LinearMatrixMap& map,
                                       const std::vector<Cell>& picks, double tol,
                                       double star_tol) {
  require_star_linear(map, star_tol, "hill_from_blocks_entries");
  const Index n = map.n();
  const Index q = map.q();
  const auto m = static_cast<Index>(picks.size());
  ComplexMatrix stack(n * q, m);
  for (Index k = 0; k < m; ++k) {
    require_cell(picks[k], n, q, "hill_from_blocks_entries");
    stack.col(k) = vec(map.block(picks[k].row, picks[k].col));
  }
  const ComplexMatrix blocks = choi(map).matrix();
  const Index rank = numerical_rank(blocks, tol);
  if (m != rank || numerical_rank(stack, tol) != m ||
      projection_residual(stack, blocks, tol) > std::max(tol, 1e-12)) {
    throw SpanDeficient("hill_from_blocks_entries: picked blocks are not a basis of the block span");
  }
  ComplexMatrix h(m, m);
  for (Index k = 0; k < m; ++k) {
    for (Index l = 0; l < m; ++l) {
      h(k, l) = map.entry(picks[k].row, picks[k].col, picks[l].row, picks[l].col);
    }
  }
  return h;
}

StructureReport analyze_structure(const LinearMatrixMap& map, double tol) {
  StructureReport report;
  report.star_linear = is_star_linear(map, tol);
  const Index n = map.n();
  const Index q = map.q();
  const auto record = [&](const Pattern& p, const std::string& name) {
    if (block_pattern_holds(map, p, tol)) report.block_patterns.push_back(name);
    if (entry_pattern_holds(map, p, tol)) report.entry_patterns.push_back(name);
  };
  for (PatternKind kind : all_pattern_kinds()) {
    if (!pattern_applies(kind, n, q)) continue;
    if (kind == PatternKind::Band) {
      const Index widest = std::max(n, q) - 1;
      for (Index d = 1; d < widest; ++d) {
        const Pattern p = make_pattern(kind, n, q, d);
        const bool b = block_pattern_holds(map, p, tol);
        const bool e = entry_pattern_holds(map, p, tol);
        const std::string name = "band(" + std::to_string(d) + ")";
        if (b || e) {
          if (b) report.block_patterns.push_back(name);
          if (e) report.entry_patterns.push_back(name);
          break;
        }
      }
      continue;
    }
    record(make_pattern(kind, n, q), to_string(kind));
  }
  report.duality_consistent = report.block_patterns == report.entry_patterns;
  return report;
}

StructuredSampler::StructuredSampler(Index n, Index q, Pattern pattern)
    : n_(n), q_(q), pattern_(std::move(pattern)) {
  if (n < 1 || q < 1) throw DimensionMismatch("StructuredSampler: n, q must be >= 1");
  if (pattern_.rows != n || pattern_.cols != q) {
    throw DimensionMismatch("StructuredSampler: pattern grid does not match n x q");
  }
  const Index count = n * n * q * q;
  // Unknowns x = [Re vec L; Im vec L]; index of l^{ij}_{kl} in vec L.
  const auto at = [&](Index i, Index j, Index k, Index l) {
    return (j * q + l) * n * n + (i * n + k);
  };
  std::vector<RealVector> rows;
  const auto relate = [&](Index a, Index b, double re_sign, double im_sign) {
    RealVector re = RealVector::Zero(2 * count);
    re(a) += 1.0;
    re(b) -= re_sign;
    rows.push_back(re);
    RealVector im = RealVector::Zero(2 * count);
    im(count + a) += 1.0;
    im(count + b) -= im_sign;
    rows.push_back(im);
  };
  const auto vanish = [&](Index a) {
    RealVector re = RealVector::Zero(2 * count);
    re(a) = 1.0;
    rows.push_back(re);
    RealVector im = RealVector::Zero(2 * count);
    im(count + a) = 1.0;
    rows.push_back(im);
  };
  // l^{ij}_{kl} = conj(l^{kl}_{ij}).
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < q; ++j) {
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < q; ++l) relate(at(i, j, k, l), at(k, l, i, j), 1.0, -1.0);
      }
    }
  }
  for (const Cell& z : pattern_.zeros) {
    for (Index k = 0; k < n; ++k) {
      for (Index l = 0; l < q; ++l) vanish(at(z.row, z.col, k, l));
    }
  }
  const double im_sign = pattern_.conjugate_pairs ? -1.0 : 1.0;
  for (const auto& [a, b] : pattern_.pairs) {
    for (Index k = 0; k < n; ++k) {
      for (Index l = 0; l < q; ++l) relate(at(a.row, a.col, k, l), at(b.row, b.col, k, l), 1.0, im_sign);
    }
  }
  RealMatrix c(static_cast<Index>(rows.size()), 2 * count);
  for (Index r = 0; r < c.rows(); ++r) c.row(r) = rows[static_cast<std::size_t>(r)].transpose();
  const RealMatrix gram = c.transpose() * c;
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram);
  const RealVector& values = eig.eigenvalues();
  const double cut = 1e-9 * std::max(1.0, values.cwiseAbs().maxCoeff());
  Index dim = 0;
  while (dim < values.size() && values(dim) <= cut) ++dim;
  basis_ = eig.eigenvectors().leftCols(dim);
}

LinearMatrixMap StructuredSampler::sample(std::uint64_t seed) const {
  Rng rng(seed);
  RealVector coeffs(basis_.cols());
  for (Index k = 0; k < coeffs.size(); ++k) coeffs(k) = rng.normal();
  const RealVector x = basis_ * coeffs;
  const Index count = n_ * n_ * q_ * q_;
  ComplexMatrix l(n_ * n_, q_ * q_);
  for (Index a = 0; a < count; ++a) l.reshaped()(a) = Complex(x(a), x(count + a));
  return LinearMatrixMap(std::move(l), n_, q_);
}

}  // namespace hillrep
