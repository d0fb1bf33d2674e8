#include <doctest.h>

#include "hillrep/hill.hpp"
#include "hillrep/numeric.hpp"
#include "hillrep/random.hpp"
#include "test_support.hpp"

using namespace hillrep;
using hillrep::testing::naive_hill_apply;
using hillrep::testing::naive_reconstruct;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

HillRepresentation blocks_rep(const LinearMatrixMap& map) {
  return build_hill(map, select_basis(map, BlocksStrategy{}));
}

}  // namespace

TEST_CASE("minimal_rank") {
  for (Index n = 1; n <= 4; ++n) CHECK(minimal_rank(identity_map(n)) == 1);
  CHECK(minimal_rank(transpose_map(2)) == 4);
  CHECK(minimal_rank(zero_map(3, 2)) == 0);
  for (Index r = 1; r <= 6; ++r) {
    const LinearMatrixMap map = random_star_linear(2, 3, r, 40 + static_cast<std::uint64_t>(r));
    CHECK(minimal_rank(map) == r);
    CHECK(block_span_dimension(map) == r);
  }
}

TEST_CASE("select_basis") {
  const BasisSelection id = select_basis(identity_map(3), BlocksStrategy{});
  REQUIRE(id.m() == 1);
  CHECK(id.basis[0] == ComplexMatrix::Identity(3, 3));
  CHECK(id.dual(0) == elementary(0, 0, 3, 3));
  CHECK(id.source == BasisSource::Blocks);

  const BasisSelection t = select_basis(transpose_map(2), BlocksStrategy{});
  REQUIRE(t.m() == 4);
  CHECK(t.basis[0] == elementary(0, 0, 2, 2));
  CHECK(t.basis[1] == elementary(1, 0, 2, 2));
  CHECK(t.basis[2] == elementary(0, 1, 2, 2));
  CHECK(t.basis[3] == elementary(1, 1, 2, 2));
  const std::vector<Cell> picks{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(t.picks == picks);

  const BasisSelection qr = select_basis(transpose_map(2), QrStrategy{});
  CHECK(qr.m() == 4);
  CHECK(qr.source == BasisSource::QR);
  CHECK(select_basis(zero_map(2, 2), BlocksStrategy{}).m() == 0);

  CHECK_THROWS_AS(select_basis(transpose_map(2),
                               UserSuppliedStrategy{{elementary(0, 0, 2, 2), elementary(1, 1, 2, 2)}}),
                  SpanDeficient);
  CHECK_THROWS_AS(select_basis(testing::diag_sum_map(), BlocksStrategy{}), NotStarLinear);

  const BasisSelection user =
      select_basis(identity_map(2), UserSuppliedStrategy{{ComplexMatrix(3.0 * ComplexMatrix::Identity(2, 2))}});
  CHECK(user.source == BasisSource::UserSupplied);
  const BasisDiagnostics d = diagnose(identity_map(2), user);
  CHECK(d.span_residual <= 1e-12);
  CHECK(d.converse_residual <= 1e-12);
  CHECK(d.biorthogonality <= 1e-12);
  CHECK(d.dual_residual <= 1e-12);
}

TEST_CASE("build_hill fixtures") {
  const HillRepresentation id = blocks_rep(identity_map(3));
  REQUIRE(id.m() == 1);
  CHECK(id.factors[0] == ComplexMatrix::Identity(3, 3));
  CHECK(id.hill == ComplexMatrix::Identity(1, 1));

  const HillRepresentation t = blocks_rep(transpose_map(2));
  REQUIRE(t.m() == 4);
  CHECK(t.factors[0] == elementary(0, 0, 2, 2));
  CHECK(t.factors[1] == elementary(0, 1, 2, 2));
  CHECK(t.factors[2] == elementary(1, 0, 2, 2));
  CHECK(t.factors[3] == elementary(1, 1, 2, 2));
  CHECK(t.hill == shuffle(2));
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      CHECK(naive_hill_apply(t, elementary(i, j, 2, 2)) == elementary(j, i, 2, 2));

  const HillRepresentation z = blocks_rep(zero_map(2, 3));
  CHECK(z.m() == 0);
  Rng rng(41);
  CHECK(apply_hill(z, rng.complex_matrix(3, 3)) == ComplexMatrix::Zero(2, 2));
  CHECK(reconstruct(z).matricization() == ComplexMatrix::Zero(4, 9));

  CHECK_THROWS_AS(build_hill(testing::diag_sum_map(),
                             basis_from_matrices(testing::diag_sum_map(),
                                                 {elementary(0, 0, 3, 2), elementary(1, 1, 3, 2)},
                                                 BasisSource::UserSupplied)),
                  NotStarLinear);
}

TEST_CASE("biorthogonality is enforced") {
  const LinearMatrixMap map = random_star_linear(2, 2, 3, 42);
  BasisSelection basis = select_basis(map, BlocksStrategy{});
  basis.beta *= 2.0;
  CHECK_THROWS_AS(build_hill(map, basis), BiorthogonalityViolation);
}

TEST_CASE("hill_from_factors") {
  const HillRepresentation r =
      hill_from_factors(identity_map(2), {ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))});
  REQUIRE(r.m() == 1);
  CHECK(std::abs(r.hill(0, 0) - 0.25) <= 1e-15);
  REQUIRE(r.basis.has_value());
  CHECK(r.basis->source == BasisSource::Derived);

  const HillRepresentation t = hill_from_factors(
      transpose_map(2), {elementary(0, 0, 2, 2), elementary(0, 1, 2, 2), elementary(1, 0, 2, 2),
                         elementary(1, 1, 2, 2)});
  CHECK(relative_difference(t.hill, shuffle(2)) <= 1e-15);
  CHECK_THROWS_AS(hill_from_factors(transpose_map(2), {elementary(0, 0, 2, 2)}), SpanDeficient);
  CHECK_THROWS_AS(hill_from_factors(testing::diag_sum_map(), {elementary(0, 0, 3, 2)}), NotStarLinear);

  const LinearMatrixMap map = random_star_linear(3, 2, 4, 43);
  const HillRepresentation ref = blocks_rep(map);
  const HillRepresentation again = hill_from_factors(map, ref.factors);
  CHECK(relative_difference(again.hill, ref.hill) <= 1e-10);
}

TEST_CASE("hill_from_kernel_matched") {
  const LinearMatrixMap map = random_star_linear(3, 2, 4, 44);
  const HillRepresentation ref = blocks_rep(map);
  const HillRepresentation same = hill_from_kernel_matched(map, stacked_forms(ref).hat);
  CHECK(relative_difference(same.hill, ref.hill) <= 1e-10);

  const ComplexMatrix ahat = kernel_matched_factor(map);
  CHECK(ahat.rows() == 4);
  const HillRepresentation svd = hill_from_kernel_matched(map, ahat);
  CHECK(relative_difference(reconstruct(svd).matricization(), map.matricization()) <= 1e-10);
  CHECK(relative_difference(choi_from_hill(svd), choi(map).matrix()) <= 1e-10);

  ComplexMatrix bad = ComplexMatrix::Zero(1, 4);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hill_from_kernel_matched(identity_map(2), bad), KernelMismatch);
  ComplexMatrix tall = ComplexMatrix::Zero(2, 4);
  tall.row(0) = vec(ComplexMatrix::Identity(2, 2)).transpose();
  tall(1, 1) = 1.0;
  CHECK_THROWS_AS(hill_from_kernel_matched(identity_map(2), tall), KernelMismatch);
}

TEST_CASE("apply_hill") {
  Rng rng(45);
  const ComplexMatrix v = rng.complex_matrix(3, 3);
  CHECK(relative_difference(apply_hill(blocks_rep(identity_map(3)), v), v) <= 1e-15);
  const HillRepresentation t = blocks_rep(transpose_map(2));
  CHECK(apply_hill(t, mat2(1.0, 2.0, 3.0, 4.0)) == mat2(1.0, 3.0, 2.0, 4.0));
  CHECK_THROWS_AS(apply_hill(t, v), DimensionMismatch);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LinearMatrixMap map = random_star_linear(3, 2, 1 + seed % 6, seed);
    const HillRepresentation rep = blocks_rep(map);
    const ComplexMatrix w = rng.complex_matrix(2, 2);
    const ComplexMatrix expect = hillrep::apply(map, w);
    CHECK(relative_difference(apply_hill(rep, w), expect) <= 1e-10);
    CHECK(relative_difference(apply_hill_hadamard(rep, w), expect) <= 1e-10);
    CHECK(relative_difference(naive_hill_apply(rep, w), expect) <= 1e-10);
  }
}

TEST_CASE("reconstruct") {
  CHECK(reconstruct(blocks_rep(identity_map(2))).matricization() == ComplexMatrix::Identity(4, 4));
  HillRepresentation t = blocks_rep(transpose_map(2));
  CHECK(reconstruct(t).matricization() == shuffle(2));
  CHECK(reconstruct(t).matricization() == naive_reconstruct(t));
  t.hill *= 2.0;
  CHECK(reconstruct(t).matricization() == ComplexMatrix(2.0 * shuffle(2)));

  const LinearMatrixMap map = random_star_linear(2, 3, 5, 46);
  const HillRepresentation rep = build_hill(map, select_basis(map, QrStrategy{}));
  CHECK(relative_difference(reconstruct(rep).matricization(), map.matricization()) <= 1e-10);
  CHECK(relative_difference(choi_from_hill(rep), choi(map).matrix()) <= 1e-10);
  const HillDiagnostics d = diagnose(rep);
  CHECK(d.hermitian_deviation <= 1e-10 * d.hill_norm);
  CHECK(d.inverse_condition > 1e-10);
}

TEST_CASE("star_linear_cert") {
  CHECK(star_linear_cert(identity_map(3), select_basis(identity_map(3), BlocksStrategy{})));
  const LinearMatrixMap map = random_star_linear(3, 3, 5, 47);
  CHECK(star_linear_cert(map, select_basis(map, QrStrategy{})));

  const LinearMatrixMap ex = testing::diag_sum_map();
  const BasisSelection forced = basis_from_matrices(
      ex, {elementary(0, 0, 3, 2), elementary(1, 1, 3, 2)}, BasisSource::UserSupplied);
  CHECK(forced.m() == 2);
  const StarLinearCertificate cert = star_linear_certificate(ex, forced);
  CHECK_FALSE(cert.holds);
  CHECK_FALSE(star_linear_cert(ex, forced));
}

TEST_CASE("compare") {
  const LinearMatrixMap map = random_star_linear(3, 2, 4, 48);
  const HillRepresentation a = blocks_rep(map);
  const RepresentationBridge self = compare(a, a);
  CHECK(relative_difference(self.phi, ComplexMatrix::Identity(4, 4)) <= 1e-10);
  CHECK(relative_difference(self.xi, a.hill) <= 1e-10);

  const HillRepresentation one = blocks_rep(identity_map(2));
  const HillRepresentation two =
      hill_from_factors(identity_map(2), {ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))});
  const RepresentationBridge small = compare(one, two);
  CHECK(std::abs(small.phi(0, 0) - 2.0) <= 1e-14);
  CHECK(small.residuals.max() <= 1e-12);

  const HillRepresentation b = build_hill(map, select_basis(map, QrStrategy{}));
  const RepresentationBridge ab = compare(a, b);
  const RepresentationBridge ba = compare(b, a);
  CHECK(ab.residuals.max() <= 1e-9);
  CHECK(ab.residuals.named().size() == 13);
  CHECK(relative_difference(ComplexMatrix(ab.phi * ba.phi), ComplexMatrix::Identity(4, 4)) <= 1e-9);

  const HillRepresentation tb = blocks_rep(transpose_map(2));
  const HillRepresentation tq = build_hill(transpose_map(2), select_basis(transpose_map(2), QrStrategy{}));
  CHECK(compare(tb, tq).residuals.max() <= 1e-12);

  HillRepresentation bare = b;
  bare.basis.reset();
  CHECK_THROWS_AS(compare(a, bare), MissingProvenance);
  CHECK_THROWS_AS(compare(a, blocks_rep(random_star_linear(3, 2, 4, 49))), DifferentMaps);
}

TEST_CASE("stacked_forms") {
  const StackedForms id = stacked_forms(blocks_rep(identity_map(2)));
  CHECK(id.hat == vec(ComplexMatrix::Identity(2, 2)).transpose());
  CHECK(id.tilde == ComplexMatrix::Identity(2, 2));

  const StackedForms t = stacked_forms(blocks_rep(transpose_map(2)));
  CHECK(t.hat.rows() == 4);
  CHECK(t.hat.cwiseAbs().rowwise().sum() == RealVector::Ones(4));
  CHECK(t.hat.cwiseAbs().colwise().sum() == RealVector::Ones(4).transpose());
  CHECK(t.tilde.rows() == 8);

  const StackedForms z = stacked_forms(blocks_rep(zero_map(2, 2)));
  CHECK(z.hat.size() == 0);
  CHECK(z.tilde.size() == 0);

  Rng rng(50);
  const std::vector<ComplexMatrix> mats{rng.complex_matrix(2, 3), rng.complex_matrix(2, 3)};
  const ComplexMatrix hat = hat_stack(mats, 2, 3);
  for (Index k = 0; k < 2; ++k) {
    CHECK(hat.row(k) == testing::naive_vec(mats[k]).conjugate().transpose());
    CHECK(tilde_stack(mats, 2, 3).block(2 * k, 0, 2, 3) == mats[k]);
  }
  const ComplexMatrix gram = inner_products(mats, mats);
  CHECK(std::abs(gram(0, 1) - trace_inner(mats[0], mats[1])) <= 1e-14);
}
