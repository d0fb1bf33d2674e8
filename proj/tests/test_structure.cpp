#include <doctest.h>

#include <algorithm>

#include "hillrep/hill.hpp"
#include "hillrep/random.hpp"
#include "hillrep/structure.hpp"
#include "test_support.hpp"

using namespace hillrep;

namespace {

bool has(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

// Block (i, j) of the matricization, written with loops.
ComplexMatrix naive_block(const LinearMatrixMap& map, Index i, Index j) {
  ComplexMatrix out(map.n(), map.q());
  for (Index k = 0; k < map.n(); ++k)
    for (Index l = 0; l < map.q(); ++l) out(k, l) = map.matricization()(i * map.n() + k, j * map.q() + l);
  return out;
}

}  // namespace

TEST_CASE("patterns") {
  const Pattern diag = make_pattern(PatternKind::Diagonal, 3, 2);
  CHECK(diag.zeros.size() == 4);
  const Pattern band = make_pattern(PatternKind::Band, 4, 4, 1);
  for (const Cell& c : band.zeros) CHECK(std::abs(c.row - c.col) > 1);
  CHECK(band.zeros.size() == 6);
  CHECK(make_pattern(PatternKind::Hermitian, 3, 3).conjugate_pairs);
  CHECK_FALSE(pattern_applies(PatternKind::Circulant, 2, 3));
  CHECK(pattern_applies(PatternKind::Toeplitz, 2, 3));
  CHECK_THROWS_AS(make_pattern(PatternKind::Symmetric, 2, 3), DimensionMismatch);
  CHECK(all_pattern_kinds().size() == 11);
  CHECK(to_string(PatternKind::Centrosymmetric) == "centrosymmetric");

  ComplexMatrix toeplitz(3, 3);
  toeplitz << 1.0, 2.0, 3.0, 4.0, 1.0, 2.0, 5.0, 4.0, 1.0;
  const CellAccessor cell = [&](Index i, Index j) { return ComplexMatrix::Constant(1, 1, toeplitz(i, j)); };
  CHECK(pattern_holds(cell, make_pattern(PatternKind::Toeplitz, 3, 3)));
  CHECK_FALSE(pattern_holds(cell, make_pattern(PatternKind::Hankel, 3, 3)));
  CHECK_FALSE(pattern_holds(cell, make_pattern(PatternKind::Circulant, 3, 3)));
}

TEST_CASE("entry matrices mirror blocks for *-linear maps") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LinearMatrixMap map = random_star_linear(3, 2, 3, seed);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 2; ++j)
        CHECK(relative_difference(entry_matrix(map, i, j), ComplexMatrix(naive_block(map, i, j).conjugate())) <=
              1e-12);
  }
}

TEST_CASE("zero pattern duality") {
  const LinearMatrixMap id = identity_map(3);
  std::vector<Cell> off;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (i != j) off.push_back({i, j});
  CHECK(zero_pattern_dual(id, off));
  const DualityVerdict v = pattern_duality(id, make_pattern(PatternKind::Diagonal, 3, 3));
  CHECK(v.block_level);
  CHECK(v.entry_level);

  StructuredSampler rows(3, 3, make_pattern(PatternKind::Lower, 3, 3));
  const LinearMatrixMap lower = rows.sample(5);
  CHECK(is_star_linear(lower));
  CHECK(block_pattern_holds(lower, make_pattern(PatternKind::Lower, 3, 3)));
  CHECK(entry_pattern_holds(lower, make_pattern(PatternKind::Lower, 3, 3)));
  CHECK_FALSE(block_pattern_holds(lower, make_pattern(PatternKind::Upper, 3, 3)));

  CHECK_THROWS_AS(zero_pattern_dual(testing::diag_sum_map(), {{0, 1}}), NotStarLinear);
}

TEST_CASE("repeated block duality") {
  const LinearMatrixMap toeplitz =
      StructuredSampler(3, 3, make_pattern(PatternKind::Toeplitz, 3, 3)).sample(9);
  const DualityVerdict v = pattern_duality(toeplitz, make_pattern(PatternKind::Toeplitz, 3, 3));
  CHECK(v.block_level);
  CHECK(v.entry_level);

  const Pattern tp = make_pattern(PatternKind::Toeplitz, 3, 3);
  CHECK(repeated_block_dual(identity_map(3), tp.pairs));
  CHECK(block_pattern_holds(identity_map(3), tp));

  const LinearMatrixMap generic = random_star_linear(2, 2, 3, 51);
  const DualityVerdict sym = pattern_duality(generic, make_pattern(PatternKind::Symmetric, 2, 2));
  CHECK_FALSE(sym.block_level);
  CHECK_FALSE(sym.entry_level);
  CHECK(repeated_block_dual(generic, {{{0, 1}, {1, 0}}}));
}

TEST_CASE("duality across sampled patterns") {
  for (Index n = 1; n <= 3; ++n)
    for (Index q = 1; q <= 3; ++q)
      for (PatternKind kind : all_pattern_kinds()) {
        if (!pattern_applies(kind, n, q)) continue;
        const Pattern pattern = make_pattern(kind, n, q, kind == PatternKind::Band ? 1 : 0);
        const StructuredSampler sampler(n, q, pattern);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          const LinearMatrixMap map = sampler.sample(seed);
          CHECK(is_star_linear(map));
          const DualityVerdict v = pattern_duality(map, pattern);
          CHECK(v.block_level);
          CHECK(v.agrees());
        }
      }
}

TEST_CASE("orthogonality duality") {
  const LinearMatrixMap t = transpose_map(2);
  const InnerProductPair ip = block_entry_inner_products(t, {0, 0}, {1, 1});
  CHECK(ip.blocks == Complex(0.0));
  CHECK(ip.entries == Complex(0.0));
  CHECK(orthogonality_dual(t, {0, 0}, {1, 1}));

  const LinearMatrixMap map = random_star_linear(3, 3, 4, 52);
  const InnerProductPair self = block_entry_inner_products(map, {1, 2}, {1, 2});
  CHECK(self.blocks.real() > 0.0);
  CHECK(orthogonality_dual(map, {1, 2}, {1, 2}));

  Rng rng(53);
  for (int t2 = 0; t2 < 20; ++t2) {
    const Cell a{rng.uniform_index(3), rng.uniform_index(3)};
    const Cell b{rng.uniform_index(3), rng.uniform_index(3)};
    const InnerProductPair p = block_entry_inner_products(map, a, b);
    CHECK(std::abs(p.entries - std::conj(p.blocks)) <= 1e-10);
    CHECK(orthogonality_dual(map, a, b));
  }
  CHECK_THROWS_AS(orthogonality_dual(testing::diag_sum_map(), {0, 0}, {1, 1}), NotStarLinear);
}

TEST_CASE("Hill matrix read from entries") {
  const std::vector<Cell> all{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(hill_from_blocks_entries(transpose_map(2), all) == shuffle(2));
  CHECK(hill_from_blocks_entries(identity_map(3), {{0, 0}}) == ComplexMatrix::Identity(1, 1));
  CHECK_THROWS_AS(hill_from_blocks_entries(transpose_map(2), {{0, 0}, {1, 1}}), SpanDeficient);
  CHECK_THROWS_AS(hill_from_blocks_entries(testing::diag_sum_map(), {{0, 0}}), NotStarLinear);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 3), q = 1 + static_cast<Index>((seed / 3) % 3);
    const LinearMatrixMap map = random_star_linear(n, q, 1 + static_cast<Index>(seed % (n * q)), seed);
    const BasisSelection basis = select_basis(map, BlocksStrategy{});
    const HillRepresentation rep = build_hill(map, basis);
    CHECK(hill_from_blocks_entries(map, basis.picks) == rep.hill);
  }
}

TEST_CASE("sparse block maps put every nonzero entry into H") {
  Rng rng(54);
  const std::vector<Cell> picks{{0, 1}, {1, 0}, {2, 2}};
  const ComplexMatrix m = testing::random_invertible_hermitian(3, rng);
  const LinearMatrixMap map = testing::sparse_block_map(3, 3, picks, m);
  REQUIRE(is_star_linear(map));
  CHECK(minimal_rank(map) == 3);
  const ComplexMatrix h = hill_from_blocks_entries(map, picks);
  CHECK(h == m);
  const ComplexMatrix& l = map.matricization();
  for (Index j = 0; j < l.cols(); ++j)
    for (Index i = 0; i < l.rows(); ++i)
      if (l(i, j) != Complex(0.0)) CHECK(testing::contains_value(h, l(i, j)));
  const BasisSelection basis = select_basis(map, BlocksStrategy{});
  CHECK(basis.picks == picks);
}

TEST_CASE("repeated block maps keep picked entries in H") {
  Rng rng(55);
  const std::vector<Index> kappa{0, 1, 0, 2, 1, 2, 0, 2, 1};
  const ComplexMatrix m = testing::random_invertible_hermitian(3, rng);
  const LinearMatrixMap map = testing::repeated_block_map(3, 3, kappa, m);
  REQUIRE(is_star_linear(map));
  const BasisSelection basis = select_basis(map, BlocksStrategy{});
  REQUIRE(basis.m() == 3);
  const std::vector<Cell> expected{{0, 0}, {0, 1}, {1, 0}};
  CHECK(basis.picks == expected);
  const ComplexMatrix h = build_hill(map, basis).hill;
  CHECK(h == m);
  for (const Cell& p : basis.picks) {
    const ComplexMatrix block = map.block(p.row, p.col);
    for (Index r = 0; r < 3; ++r)
      for (Index s = 0; s < 3; ++s) CHECK(testing::contains_value(h, block(r, s)));
  }
}

TEST_CASE("analyze_structure") {
  const StructureReport id = analyze_structure(identity_map(3));
  CHECK(id.star_linear);
  CHECK(id.duality_consistent);
  CHECK(has(id.block_patterns, "diagonal"));
  CHECK(has(id.block_patterns, "toeplitz"));
  CHECK(has(id.entry_patterns, "diagonal"));
  CHECK(id.block_patterns == id.entry_patterns);

  const LinearMatrixMap banded =
      StructuredSampler(4, 4, make_pattern(PatternKind::Band, 4, 4, 1)).sample(3);
  const StructureReport b = analyze_structure(banded);
  CHECK(has(b.block_patterns, "band(1)"));
  CHECK(b.block_patterns == b.entry_patterns);

  const StructureReport ex = analyze_structure(testing::diag_sum_map());
  CHECK_FALSE(ex.star_linear);
}
