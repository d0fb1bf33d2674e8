#pragma once

// Minimal Hill representations
//
//   map(V) = sum_{k,l} H(k,l) A_l V A_k^*,   A_k in F^{n x q},  H in F^{m x m},
//
// of *-linear maps, with m = rank(Choi).  A representation is built from a
// basis L_1..L_m of the span of the blocks L_ij of the matricization:
//
//   L_ij = sum_k alpha_k^{ij} L_k        (alpha unique)
//   L_k  = sum_ij beta_ij^k  L_ij        (beta a chosen solution)
//   A_k  = [conj(alpha_k^{ij})]_{ij},  B_k = [beta_ij^k]_{ij},
//   H(k,l) = <B_k, L_l> = trace(B_k L_l^*).
//
// Coefficient arrays are stored as m x nq matrices indexed by the column of
// the Choi matrix that holds vec(L_ij), i.e. column j*n + i.  With that layout
// the expansion matrix `alpha` is exactly the stacked form A-hat whose rows are
// vec(conj(A_k))^T, and row k of `beta` is vec(B_k)^T.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hillrep/linmap.hpp"
#include "hillrep/types.hpp"

namespace hillrep {

enum class BasisSource { Blocks, QR, UserSupplied, Derived };

std::string to_string(BasisSource source);

struct BlocksStrategy {};
struct QrStrategy {};
struct UserSuppliedStrategy {
  std::vector<ComplexMatrix> matrices;
};
using BasisStrategy = std::variant<BlocksStrategy, QrStrategy, UserSuppliedStrategy>;

struct BasisSelection {
  Index n = 0;
  Index q = 0;
  std::vector<ComplexMatrix> basis;  // L_1..L_m, each n x q
  ComplexMatrix alpha;               // m x nq
  ComplexMatrix beta;                // m x nq
  BasisSource source = BasisSource::UserSupplied;
  std::vector<Cell> picks;           // blocks chosen by the Blocks strategy
  double tol = kDefaultRankTol;

  Index m() const { return static_cast<Index>(basis.size()); }
  /// A_k = conj(unvec(alpha row k)).
  ComplexMatrix factor(Index k) const;
  /// B_k = unvec(beta row k).
  ComplexMatrix dual(Index k) const;
  std::vector<ComplexMatrix> factors() const;
  std::vector<ComplexMatrix> duals() const;
};

struct HillRepresentation {
  Index n = 0;
  Index q = 0;
  std::vector<ComplexMatrix> factors;  // A_1..A_m
  ComplexMatrix hill;                  // H, m x m
  std::optional<BasisSelection> basis;

  Index m() const { return static_cast<Index>(factors.size()); }
};

/// A-hat (m x nq, rows vec(conj(A_k))^T) and A-tilde (mn x q, the A_k stacked).
struct StackedForms {
  ComplexMatrix hat;
  ComplexMatrix tilde;
};

/// Relative residuals of the identities linking two minimal representations
/// through Phi(k,l) = <B_k, A'_l> and Xi(k,l) = <B_k, L'_l>.
struct BridgeResiduals {
  double h_phi_hprime_phi_star = 0.0;  // H = Phi H' Phi^*
  double xi_phi_hprime = 0.0;          // Xi = Phi H'
  double h_phi_xi_star = 0.0;          // H = Phi Xi^*
  double lhat = 0.0;                   // Lhat = conj(Phi) Lhat'
  double ahat = 0.0;                   // conj(Phi)^* Ahat = Ahat'
  double ltilde = 0.0;                 // Ltilde = (Phi (x) I_n) Ltilde'
  double atilde = 0.0;                 // (Phi^* (x) I_n) Atilde = Atilde'
  double phi_inverse = 0.0;            // Phi [<B'_k, A_l>] = I
  double xi_star = 0.0;                // Xi^* = [<B'_k, L_l>]
  double lhat_hill = 0.0;              // Lhat = conj(H) Ahat
  double lhat_prime_hill = 0.0;        // Lhat' = conj(H') Ahat'
  double lhat_xi = 0.0;                // Lhat = conj(Xi) Ahat'
  double lhat_prime_xi = 0.0;          // Lhat' = conj(Xi)^* Ahat

  double max() const;
  std::vector<std::pair<std::string, double>> named() const;
};

struct RepresentationBridge {
  ComplexMatrix phi;
  ComplexMatrix xi;
  BridgeResiduals residuals;
};

struct BasisDiagnostics {
  double inverse_condition = 0.0;   // sigma_min / sigma_max of [vec L_k]
  double span_residual = 0.0;       // blocks outside span{L_k}
  double converse_residual = 0.0;   // L_k outside span{L_ij}
  double biorthogonality = 0.0;     // max |<B_k, A_l> - delta_kl|
  double dual_residual = 0.0;       // L_k vs sum_ij beta_ij^k L_ij
};

struct HillDiagnostics {
  double hermitian_deviation = 0.0;  // max |H - H^*|
  double hill_norm = 0.0;            // ||H||_F
  double inverse_condition = 0.0;    // sigma_min(H) / sigma_max(H)
  double factor_inverse_condition = 0.0;
};

struct StarLinearCertificate {
  double kronecker_residual = 0.0;  // L vs sum_k conj(L_k) (x) A_k
  double expansion_residual = 0.0;  // L_k vs sum_l <B_k, L_l> A_l
  double self_adjoint_residual = 0.0;  // <B_k, L_l> vs conj(<B_l, L_k>)
  bool holds = false;
};

/// m = rank of the Choi matrix (singular values above tol * sigma_max).
Index minimal_rank(const LinearMatrixMap& map, double tol = kDefaultRankTol);

/// dim span{L_ij}, from the stack of vectorized blocks read off L directly.
Index block_span_dimension(const LinearMatrixMap& map, double tol = kDefaultRankTol);

/// Basis of the block span.  Blocks: greedy row-major scan of the blocks,
/// keeping each whose residual against the blocks already kept exceeds
/// tol * (largest block norm), with B_k = E_{i_k j_k}.  QR: orthonormal basis
/// from a column-pivoted QR of the Choi matrix, minimum-norm beta.
/// UserSupplied: the given matrices, which must span the block span.
/// Throws NotStarLinear unless the map is *-linear within star_tol.
BasisSelection select_basis(const LinearMatrixMap& map, const BasisStrategy& strategy,
                            double tol = kDefaultRankTol, double star_tol = kDefaultTol);

/// Basis from explicit matrices without the *-linearity precondition; the
/// expansion identities hold for every linear map.  Throws SpanDeficient.
BasisSelection basis_from_matrices(const LinearMatrixMap& map,
                                   std::vector<ComplexMatrix> matrices,
                                   BasisSource source, double tol = kDefaultRankTol);

BasisDiagnostics diagnose(const LinearMatrixMap& map, const BasisSelection& basis);

HillRepresentation build_hill(const LinearMatrixMap& map, const BasisSelection& basis,
                              double star_tol = kDefaultTol);

/// Representation with prescribed factors A_1..A_m spanning the block span;
/// H solves L_k = sum_l H(k,l) A_l with L_k = [conj(lambda_k^{ij})] where
/// L_ij = sum_k lambda_k^{ij} A_k.
HillRepresentation hill_from_factors(const LinearMatrixMap& map,
                                     const std::vector<ComplexMatrix>& factors,
                                     double tol = kDefaultRankTol,
                                     double star_tol = kDefaultTol);

/// Representation from any m x nq matrix A-hat with Ker A-hat = Ker Choi:
/// H^T = (A A^*)^{-1} A Choi A^* (A A^*)^{-1}, and A_k = conj(unvec(row k)).
HillRepresentation hill_from_kernel_matched(const LinearMatrixMap& map,
                                            const ComplexMatrix& ahat,
                                            double tol = kDefaultRankTol,
                                            double star_tol = kDefaultTol);

/// m x nq matrix with Ker = Ker Choi, from the leading right singular vectors.
ComplexMatrix kernel_matched_factor(const LinearMatrixMap& map,
                                    double tol = kDefaultRankTol);

ComplexMatrix apply_hill(const HillRepresentation& rep, const ComplexMatrix& v);
/// Same value through sum_circ(H, [A_l V A_k^*]_{k,l}).
ComplexMatrix apply_hill_hadamard(const HillRepresentation& rep, const ComplexMatrix& v);

/// L = sum_{k,l} H(k,l) conj(A_k) (x) A_l.
LinearMatrixMap reconstruct(const HillRepresentation& rep);
/// Choi = Ahat^* H^T Ahat.
ComplexMatrix choi_from_hill(const HillRepresentation& rep);

StackedForms stacked_forms(const HillRepresentation& rep);
/// Rows vec(conj(M_k))^T for arbitrary n x q matrices.
ComplexMatrix hat_stack(const std::vector<ComplexMatrix>& mats, Index n, Index q);
/// Vertical stack of arbitrary n x q matrices.
ComplexMatrix tilde_stack(const std::vector<ComplexMatrix>& mats, Index n, Index q);

HillDiagnostics diagnose(const HillRepresentation& rep);

StarLinearCertificate star_linear_certificate(const LinearMatrixMap& map,
                                              const BasisSelection& basis);
bool star_linear_cert(const LinearMatrixMap& map, const BasisSelection& basis);

/// Bridge between two minimal representations of one map.  Throws
/// MissingProvenance when either lacks its basis, DifferentMaps when their
/// reconstructions differ by more than tol (relative Frobenius).
RepresentationBridge compare(const HillRepresentation& a, const HillRepresentation& b,
                             double tol = kDefaultRankTol);

/// Gram-type matrix [<M_k, N_l>]_{k,l}.
ComplexMatrix inner_products(const std::vector<ComplexMatrix>& left,
                             const std::vector<ComplexMatrix>& right);

}  // namespace hillrep
