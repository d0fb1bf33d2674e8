#include "hillrep/hill.hpp"

#include <algorithm>
#include <string>

#include "hillrep/numeric.hpp"
#include "hillrep/tensorops.hpp"

namespace hillrep {

namespace {

// Floor for relative residual checks, so a caller-supplied tiny tol does not
// reject results that are exact up to rounding.
double residual_tol(double tol) { return std::max(tol, 1e-12); }

std::string count_string(Index k) { return std::to_string(k); }

void require_star_linear(const LinearMatrixMap& map, double star_tol, const char* what) {
  const StarLinearity s = star_linearity(map, star_tol);
  if (!s.choi_hermitian || !s.shuffle_identity) {
    throw NotStarLinear(std::string(what) + ": map is not *-linear (max |Choi - Choi^*| = " +
                        std::to_string(s.choi_deviation) + ")");
  }
}

void require_block_shapes(const std::vector<ComplexMatrix>& mats, Index n, Index q,
                          const char* what) {
  for (const ComplexMatrix& m : mats) {
    if (m.rows() != n || m.cols() != q) {
      throw DimensionMismatch(std::string(what) + ": expected " + count_string(n) + "x" +
                              count_string(q) + " matrices");
    }
  }
}

// Columns vec(M_k).
ComplexMatrix vec_columns(const std::vector<ComplexMatrix>& mats, Index n, Index q) {
  ComplexMatrix out(n * q, static_cast<Index>(mats.size()));
  for (Index k = 0; k < out.cols(); ++k) out.col(k) = vec(mats[k]);
  return out;
}

std::vector<ComplexMatrix> unvec_columns(const ComplexMatrix& cols, Index n, Index q) {
  std::vector<ComplexMatrix> out;
  out.reserve(cols.cols());
  for (Index k = 0; k < cols.cols(); ++k) out.push_back(unvec(ComplexVector(cols.col(k)), n, q));
  return out;
}

void require_spans_blocks(const ComplexMatrix& stack, const ComplexMatrix& blocks,
                          Index m, double tol, const char* what) {
  if (numerical_rank(stack, tol) < m) {
    throw SpanDeficient(std::string(what) + ": matrices are linearly dependent");
  }
  if (projection_residual(stack, blocks, tol) > residual_tol(tol)) {
    throw SpanDeficient(std::string(what) + ": blocks lie outside the span of the matrices");
  }
  if (projection_residual(blocks, stack, tol) > residual_tol(tol)) {
    throw SpanDeficient(std::string(what) + ": matrices lie outside the block span");
  }
}

BasisSelection empty_selection(const LinearMatrixMap& map, BasisSource source, double tol) {
  BasisSelection out;
  out.n = map.n();
  out.q = map.q();
  out.alpha = ComplexMatrix(0, map.n() * map.q());
  out.beta = ComplexMatrix(0, map.n() * map.q());
  out.source = source;
  out.tol = tol;
  return out;
}

// Validates span and independence, computes alpha by least squares and, unless
// supplied, beta as the minimum-norm solution of Choi * beta^T = [vec L_k].
BasisSelection finish_basis(const LinearMatrixMap& map, const ComplexMatrix& blocks,
                            std::vector<ComplexMatrix> mats,
                            std::optional<ComplexMatrix> beta, BasisSource source,
                            std::vector<Cell> picks, double tol) {
  const Index n = map.n();
  const Index q = map.q();
  require_block_shapes(mats, n, q, "basis");
  const Index m = numerical_rank(blocks, tol);
  if (static_cast<Index>(mats.size()) != m) {
    throw SpanDeficient("basis: expected " + count_string(m) + " matrices, got " +
                        count_string(static_cast<Index>(mats.size())));
  }
  BasisSelection out = empty_selection(map, source, tol);
  out.picks = std::move(picks);
  if (m == 0) return out;

  const ComplexMatrix stack = vec_columns(mats, n, q);
  require_spans_blocks(stack, blocks, m, tol, "basis");
  out.alpha = least_squares(stack, blocks);
  out.beta = beta ? std::move(*beta) : ComplexMatrix(truncated_pinv_solve(blocks, stack, m).transpose());
  out.basis = std::move(mats);
  return out;
}

BasisSelection blocks_basis(const LinearMatrixMap& map, const ComplexMatrix& blocks,
                            double tol) {
  const Index n = map.n();
  const Index q = map.q();
  const Index m = numerical_rank(blocks, tol);
  double largest = 0.0;
  for (Index c = 0; c < blocks.cols(); ++c) largest = std::max(largest, blocks.col(c).norm());
  const double threshold = tol * largest;

  ComplexMatrix ortho(n * q, 0);
  std::vector<Cell> picks;
  std::vector<ComplexMatrix> mats;
  for (Index i = 0; i < n && static_cast<Index>(picks.size()) < m; ++i) {
    for (Index j = 0; j < q && static_cast<Index>(picks.size()) < m; ++j) {
      ComplexVector r = blocks.col(j * n + i);
      for (int pass = 0; pass < 2; ++pass) r -= ortho * (ortho.adjoint() * r);
      const double norm = r.norm();
      if (norm <= threshold) continue;
      ortho.conservativeResize(Eigen::NoChange, ortho.cols() + 1);
      ortho.col(ortho.cols() - 1) = r / norm;
      picks.push_back({i, j});
      mats.push_back(map.block(i, j));
    }
  }
  if (static_cast<Index>(picks.size()) != m) {
    throw SpanDeficient("select_basis: block scan found " +
                        count_string(static_cast<Index>(picks.size())) +
                        " independent blocks, rank is " + count_string(m));
  }
  ComplexMatrix beta = ComplexMatrix::Zero(m, n * q);
  for (Index k = 0; k < m; ++k) beta(k, picks[k].col * n + picks[k].row) = 1.0;
  BasisSelection out = finish_basis(map, blocks, std::move(mats), std::move(beta),
                                    BasisSource::Blocks, std::move(picks), tol);
  // A block that is bitwise a copy of a picked one expands with coefficient
  // exactly 1; least squares would only get within rounding of it.
  for (Index c = 0; c < blocks.cols(); ++c) {
    for (Index k = 0; k < m; ++k) {
      if (blocks.col(c) == blocks.col(out.picks[k].col * n + out.picks[k].row)) {
        out.alpha.col(c) = unit_vector(k, m);
        break;
      }
    }
  }
  return out;
}

BasisSelection qr_basis(const LinearMatrixMap& map, const ComplexMatrix& blocks, double tol) {
  const Index nq = blocks.rows();
  const Index m = numerical_rank(blocks, tol);
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(blocks);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(nq, m);
  return finish_basis(map, blocks, unvec_columns(q, map.n(), map.q()), std::nullopt,
                      BasisSource::QR, {}, tol);
}

double biorthogonality_error(const BasisSelection& basis) {
  const Index m = basis.m();
  if (m == 0) return 0.0;
  return max_abs(ComplexMatrix(basis.beta * basis.alpha.transpose()) -
                 ComplexMatrix::Identity(m, m));
}

HillRepresentation from_factors_and_hill(const LinearMatrixMap& map,
                                         std::vector<ComplexMatrix> factors,
                                         ComplexMatrix hill, double tol) {
  HillRepresentation rep;
  rep.n = map.n();
  rep.q = map.q();
  // L_k = sum_l H(k,l) A_l.
  const ComplexMatrix ls = vec_columns(factors, map.n(), map.q()) * hill.transpose();
  rep.basis = basis_from_matrices(map, unvec_columns(ls, map.n(), map.q()),
                                  BasisSource::Derived, tol);
  rep.factors = std::move(factors);
  rep.hill = std::move(hill);
  return rep;
}

HillRepresentation empty_representation(const LinearMatrixMap& map, double tol) {
  HillRepresentation rep;
  rep.n = map.n();
  rep.q = map.q();
  rep.hill = ComplexMatrix(0, 0);
  rep.basis = empty_selection(map, BasisSource::Derived, tol);
  return rep;
}

}  // namespace

std::string to_string(BasisSource source) {
  switch (source) {
    case BasisSource::Blocks: return "blocks";
    case BasisSource::QR: return "qr";
    case BasisSource::UserSupplied: return "user";
    case BasisSource::Derived: return "derived";
  }
  return "unknown";
}

ComplexMatrix BasisSelection::factor(Index k) const {
  return unvec(ComplexVector(alpha.row(k).adjoint()), n, q);
}

ComplexMatrix BasisSelection::dual(Index k) const {
  return unvec(ComplexVector(beta.row(k).transpose()), n, q);
}

std::vector<ComplexMatrix> BasisSelection::factors() const {
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < m(); ++k) out.push_back(factor(k));
  return out;
}

std::vector<ComplexMatrix> BasisSelection::duals() const {
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < m(); ++k) out.push_back(dual(k));
  return out;
}

double BridgeResiduals::max() const {
  double worst = 0.0;
  for (const auto& [name, value] : named()) worst = std::max(worst, value);
  return worst;
}

std::vector<std::pair<std::string, double>> BridgeResiduals::named() const {
  return {{"H_PhiHpPhiStar", h_phi_hprime_phi_star},
          {"Xi_PhiHp", xi_phi_hprime},
          {"H_PhiXiStar", h_phi_xi_star},
          {"Lhat_rel", lhat},
          {"Ahat_rel", ahat},
          {"Ltilde_rel", ltilde},
          {"Atilde_rel", atilde},
          {"PhiInverse_rel", phi_inverse},
          {"XiStar_rel", xi_star},
          {"Lhat_H_rel", lhat_hill},
          {"LhatPrime_Hp_rel", lhat_prime_hill},
          {"Lhat_Xi_rel", lhat_xi},
          {"LhatPrime_Xi_rel", lhat_prime_xi}};
}

Index minimal_rank(const LinearMatrixMap& map, double tol) {
  return numerical_rank(choi(map).matrix(), tol);
}

Index block_span_dimension(const LinearMatrixMap& map, double tol) {
  const Index n = map.n();
  const Index q = map.q();
  ComplexMatrix stack(n * q, n * q);
  Index c = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < q; ++j) stack.col(c++) = vec(map.block(i, j));
  }
  return numerical_rank(stack, tol);
}

BasisSelection select_basis(const LinearMatrixMap& map, const BasisStrategy& strategy,
                            double tol, double star_tol) {
  require_star_linear(map, star_tol, "select_basis");
  const ComplexMatrix blocks = choi(map).matrix();
  if (std::holds_alternative<BlocksStrategy>(strategy)) return blocks_basis(map, blocks, tol);
  if (std::holds_alternative<QrStrategy>(strategy)) return qr_basis(map, blocks, tol);
  return finish_basis(map, blocks, std::get<UserSuppliedStrategy>(strategy).matrices,
                      std::nullopt, BasisSource::UserSupplied, {}, tol);
}

BasisSelection basis_from_matrices(const LinearMatrixMap& map,
                                   std::vector<ComplexMatrix> matrices,
                                   BasisSource source, double tol) {
  return finish_basis(map, choi(map).matrix(), std::move(matrices), std::nullopt, source, {},
                      tol);
}

BasisDiagnostics diagnose(const LinearMatrixMap& map, const BasisSelection& basis) {
  BasisDiagnostics out;
  if (basis.m() == 0) return out;
  const ComplexMatrix blocks = choi(map).matrix();
  const ComplexMatrix stack = vec_columns(basis.basis, map.n(), map.q());
  out.inverse_condition = inverse_condition(stack);
  out.span_residual = projection_residual(stack, blocks, basis.tol);
  out.converse_residual = projection_residual(blocks, stack, basis.tol);
  out.biorthogonality = biorthogonality_error(basis);
  out.dual_residual = relative_difference(blocks * basis.beta.transpose(), stack);
  return out;
}

HillRepresentation build_hill(const LinearMatrixMap& map, const BasisSelection& basis,
                              double star_tol) {
  if (basis.n != map.n() || basis.q != map.q()) {
    throw DimensionMismatch("build_hill: basis dimensions do not match the map");
  }
  require_star_linear(map, star_tol, "build_hill");
  HillRepresentation rep;
  rep.n = map.n();
  rep.q = map.q();
  rep.basis = basis;
  const Index m = basis.m();
  if (m == 0) {
    rep.hill = ComplexMatrix(0, 0);
    return rep;
  }
  const double bound = std::max(basis.tol, kDefaultTol) *
                       std::max(1.0, basis.alpha.norm() * basis.beta.norm());
  const double bio = biorthogonality_error(basis);
  if (bio > bound) {
    throw BiorthogonalityViolation("build_hill: max |<B_k, A_l> - delta_kl| = " +
                                   std::to_string(bio));
  }
  rep.factors = basis.factors();
  // H(k,l) = <B_k, L_l> = sum_c beta(k,c) conj(vec(L_l)[c]).
  rep.hill = basis.beta * vec_columns(basis.basis, map.n(), map.q()).conjugate();
  return rep;
}

HillRepresentation hill_from_factors(const LinearMatrixMap& map,
                                     const std::vector<ComplexMatrix>& factors, double tol,
                                     double star_tol) {
  require_star_linear(map, star_tol, "hill_from_factors");
  require_block_shapes(factors, map.n(), map.q(), "hill_from_factors");
  const ComplexMatrix blocks = choi(map).matrix();
  const Index m = numerical_rank(blocks, tol);
  if (static_cast<Index>(factors.size()) != m) {
    throw SpanDeficient("hill_from_factors: expected " + count_string(m) + " matrices, got " +
                        count_string(static_cast<Index>(factors.size())));
  }
  if (m == 0) return empty_representation(map, tol);

  const ComplexMatrix stack = vec_columns(factors, map.n(), map.q());
  require_spans_blocks(stack, blocks, m, tol, "hill_from_factors");
  // L_ij = sum_k lambda_k^{ij} A_k, then L_k = [conj(lambda_k^{ij})].
  const ComplexMatrix lambda = least_squares(stack, blocks);
  const ComplexMatrix ls = lambda.adjoint();
  // [vec L_k] = [vec A_l] H^T.
  const ComplexMatrix hill = least_squares(stack, ls).transpose();
  return from_factors_and_hill(map, factors, hill, tol);
}

HillRepresentation hill_from_kernel_matched(const LinearMatrixMap& map,
                                            const ComplexMatrix& ahat, double tol,
                                            double star_tol) {
  require_star_linear(map, star_tol, "hill_from_kernel_matched");
  const Index n = map.n();
  const Index q = map.q();
  if (ahat.cols() != n * q) {
    throw DimensionMismatch("hill_from_kernel_matched: A-hat must have n*q = " +
                            count_string(n * q) + " columns");
  }
  const ComplexMatrix c = choi(map).matrix();
  const Index m = numerical_rank(c, tol);
  if (ahat.rows() != m) {
    throw KernelMismatch("hill_from_kernel_matched: A-hat has " + count_string(ahat.rows()) +
                         " rows, rank is " + count_string(m));
  }
  if (m == 0) return empty_representation(map, tol);
  if (numerical_rank(ahat, tol) != m) {
    throw KernelMismatch("hill_from_kernel_matched: A-hat is rank deficient");
  }
  const ComplexMatrix choi_kernel = null_space(c, tol);
  if (choi_kernel.cols() > 0 &&
      (ahat * choi_kernel).norm() > residual_tol(tol) * ahat.norm()) {
    throw KernelMismatch("hill_from_kernel_matched: A-hat does not vanish on Ker Choi");
  }
  const ComplexMatrix ahat_kernel = null_space(ahat, tol);
  if (ahat_kernel.cols() > 0 && (c * ahat_kernel).norm() > residual_tol(tol) * c.norm()) {
    throw KernelMismatch("hill_from_kernel_matched: Choi does not vanish on Ker A-hat");
  }

  const ComplexMatrix gram = ahat * ahat.adjoint();
  const Eigen::LLT<ComplexMatrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw KernelMismatch("hill_from_kernel_matched: A-hat A-hat^* is not positive definite");
  }
  const ComplexMatrix left = solver.solve(ComplexMatrix(ahat * c * ahat.adjoint()));
  const ComplexMatrix hill_t = solver.solve(ComplexMatrix(left.adjoint())).adjoint();

  std::vector<ComplexMatrix> factors;
  for (Index k = 0; k < m; ++k) factors.push_back(unvec(ComplexVector(ahat.row(k).adjoint()), n, q));
  return from_factors_and_hill(map, std::move(factors), hill_t.transpose(), tol);
}

ComplexMatrix kernel_matched_factor(const LinearMatrixMap& map, double tol) {
  const ComplexMatrix c = choi(map).matrix();
  const Index m = numerical_rank(c, tol);
  if (m == 0) return ComplexMatrix(0, c.cols());
  Eigen::BDCSVD<ComplexMatrix> svd(c, Eigen::ComputeThinV);
  return svd.matrixV().leftCols(m).adjoint();
}

ComplexMatrix apply_hill(const HillRepresentation& rep, const ComplexMatrix& v) {
  if (v.rows() != rep.q || v.cols() != rep.q) {
    throw DimensionMismatch("apply_hill: argument must be " + count_string(rep.q) + "x" +
                            count_string(rep.q));
  }
  ComplexMatrix out = ComplexMatrix::Zero(rep.n, rep.n);
  for (Index k = 0; k < rep.m(); ++k) {
    ComplexMatrix weighted = ComplexMatrix::Zero(rep.n, rep.q);
    for (Index l = 0; l < rep.m(); ++l) weighted += rep.hill(k, l) * rep.factors[l];
    out += weighted * v * rep.factors[k].adjoint();
  }
  return out;
}

ComplexMatrix apply_hill_hadamard(const HillRepresentation& rep, const ComplexMatrix& v) {
  if (v.rows() != rep.q || v.cols() != rep.q) {
    throw DimensionMismatch("apply_hill_hadamard: argument must be " + count_string(rep.q) +
                            "x" + count_string(rep.q));
  }
  const Index m = rep.m();
  const Index n = rep.n;
  if (m == 0) return ComplexMatrix::Zero(n, n);
  ComplexMatrix grid(m * n, m * n);
  for (Index k = 0; k < m; ++k) {
    for (Index l = 0; l < m; ++l) {
      grid.block(k * n, l * n, n, n) = rep.factors[l] * v * rep.factors[k].adjoint();
    }
  }
  return sum_circ(rep.hill, grid);
}

LinearMatrixMap reconstruct(const HillRepresentation& rep) {
  ComplexMatrix l = ComplexMatrix::Zero(rep.n * rep.n, rep.q * rep.q);
  for (Index k = 0; k < rep.m(); ++k) {
    ComplexMatrix weighted = ComplexMatrix::Zero(rep.n, rep.q);
    for (Index j = 0; j < rep.m(); ++j) weighted += rep.hill(k, j) * rep.factors[j];
    l += kron(rep.factors[k].conjugate(), weighted);
  }
  return LinearMatrixMap(std::move(l), rep.n, rep.q);
}

ComplexMatrix choi_from_hill(const HillRepresentation& rep) {
  const ComplexMatrix hat = hat_stack(rep.factors, rep.n, rep.q);
  if (rep.m() == 0) return ComplexMatrix::Zero(rep.n * rep.q, rep.n * rep.q);
  return hat.adjoint() * rep.hill.transpose() * hat;
}

ComplexMatrix hat_stack(const std::vector<ComplexMatrix>& mats, Index n, Index q) {
  require_block_shapes(mats, n, q, "hat_stack");
  return vec_columns(mats, n, q).adjoint();
}

ComplexMatrix tilde_stack(const std::vector<ComplexMatrix>& mats, Index n, Index q) {
  require_block_shapes(mats, n, q, "tilde_stack");
  ComplexMatrix out(n * static_cast<Index>(mats.size()), q);
  for (std::size_t k = 0; k < mats.size(); ++k) out.middleRows(static_cast<Index>(k) * n, n) = mats[k];
  return out;
}

StackedForms stacked_forms(const HillRepresentation& rep) {
  return {hat_stack(rep.factors, rep.n, rep.q), tilde_stack(rep.factors, rep.n, rep.q)};
}

HillDiagnostics diagnose(const HillRepresentation& rep) {
  HillDiagnostics out;
  if (rep.m() == 0) return out;
  out.hermitian_deviation = hermitian_deviation(rep.hill);
  out.hill_norm = rep.hill.norm();
  out.inverse_condition = inverse_condition(rep.hill);
  out.factor_inverse_condition = inverse_condition(vec_columns(rep.factors, rep.n, rep.q));
  return out;
}

StarLinearCertificate star_linear_certificate(const LinearMatrixMap& map,
                                              const BasisSelection& basis) {
  StarLinearCertificate out;
  const Index n = map.n();
  const Index q = map.q();
  const std::vector<ComplexMatrix> factors = basis.factors();
  ComplexMatrix kron_sum = ComplexMatrix::Zero(n * n, q * q);
  for (Index k = 0; k < basis.m(); ++k) kron_sum += kron(basis.basis[k].conjugate(), factors[k]);
  out.kronecker_residual = relative_difference(map.matricization(), kron_sum);

  if (basis.m() > 0) {
    const ComplexMatrix g = inner_products(basis.duals(), basis.basis);
    const ComplexMatrix ls = vec_columns(basis.basis, n, q);
    out.expansion_residual =
        relative_difference(ls, vec_columns(factors, n, q) * g.transpose());
    out.self_adjoint_residual = relative_difference(g, ComplexMatrix(g.adjoint()));
  }
  const double bound = residual_tol(basis.tol);
  out.holds = out.kronecker_residual <= bound && out.expansion_residual <= bound &&
              out.self_adjoint_residual <= bound;
  return out;
}

bool star_linear_cert(const LinearMatrixMap& map, const BasisSelection& basis) {
  return star_linear_certificate(map, basis).holds;
}

ComplexMatrix inner_products(const std::vector<ComplexMatrix>& left,
                             const std::vector<ComplexMatrix>& right) {
  ComplexMatrix out(static_cast<Index>(left.size()), static_cast<Index>(right.size()));
  for (Index k = 0; k < out.rows(); ++k) {
    for (Index l = 0; l < out.cols(); ++l) out(k, l) = trace_inner(left[k], right[l]);
  }
  return out;
}

RepresentationBridge compare(const HillRepresentation& a, const HillRepresentation& b,
                             double tol) {
  if (!a.basis || !b.basis) {
    throw MissingProvenance("compare: both representations need basis provenance");
  }
  if (a.n != b.n || a.q != b.q) throw DifferentMaps("compare: dimensions differ");
  if (a.m() != b.m()) {
    throw DifferentMaps("compare: sizes differ (" + count_string(a.m()) + " vs " +
                        count_string(b.m()) + ")");
  }
  const double gap =
      relative_difference(reconstruct(a).matricization(), reconstruct(b).matricization());
  if (gap > tol) {
    throw DifferentMaps("compare: reconstructed matricizations differ (relative " +
                        std::to_string(gap) + ")");
  }

  RepresentationBridge out;
  const Index m = a.m();
  const Index n = a.n;
  const Index q = a.q;
  const std::vector<ComplexMatrix> duals_a = a.basis->duals();
  const std::vector<ComplexMatrix> duals_b = b.basis->duals();
  const std::vector<ComplexMatrix>& ls_a = a.basis->basis;
  const std::vector<ComplexMatrix>& ls_b = b.basis->basis;
  out.phi = inner_products(duals_a, b.factors);
  out.xi = inner_products(duals_a, ls_b);
  if (m == 0) return out;

  const ComplexMatrix& h = a.hill;
  const ComplexMatrix& hp = b.hill;
  const ComplexMatrix& phi = out.phi;
  const ComplexMatrix& xi = out.xi;
  const ComplexMatrix id_n = ComplexMatrix::Identity(n, n);
  const ComplexMatrix lhat = hat_stack(ls_a, n, q);
  const ComplexMatrix lhat_p = hat_stack(ls_b, n, q);
  const ComplexMatrix ahat = hat_stack(a.factors, n, q);
  const ComplexMatrix ahat_p = hat_stack(b.factors, n, q);

  BridgeResiduals& r = out.residuals;
  r.h_phi_hprime_phi_star = relative_difference(h, phi * hp * phi.adjoint());
  r.xi_phi_hprime = relative_difference(xi, phi * hp);
  r.h_phi_xi_star = relative_difference(h, phi * xi.adjoint());
  r.lhat = relative_difference(lhat, phi.conjugate() * lhat_p);
  r.ahat = relative_difference(ComplexMatrix(phi.transpose() * ahat), ahat_p);
  r.ltilde = relative_difference(tilde_stack(ls_a, n, q),
                                 kron(phi, id_n) * tilde_stack(ls_b, n, q));
  r.atilde = relative_difference(
      ComplexMatrix(kron(ComplexMatrix(phi.adjoint()), id_n) * tilde_stack(a.factors, n, q)),
      tilde_stack(b.factors, n, q));
  r.phi_inverse = relative_difference(phi * inner_products(duals_b, a.factors),
                                      ComplexMatrix::Identity(m, m));
  r.xi_star = relative_difference(ComplexMatrix(xi.adjoint()), inner_products(duals_b, ls_a));
  r.lhat_hill = relative_difference(lhat, h.conjugate() * ahat);
  r.lhat_prime_hill = relative_difference(lhat_p, hp.conjugate() * ahat_p);
  r.lhat_xi = relative_difference(lhat, xi.conjugate() * ahat_p);
  r.lhat_prime_xi = relative_difference(lhat_p, xi.transpose() * ahat);
  return out;
}

}  // namespace hillrep
