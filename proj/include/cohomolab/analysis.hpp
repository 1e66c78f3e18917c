#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohomolab/cochain.hpp"
#include "cohomolab/complex.hpp"
#include "cohomolab/representation.hpp"

namespace cohomolab {

// ---------------------------------------------------------------------------
// Rank decisions

struct RankOptions {
  // 0 = automatic threshold max(shape) * machine_eps * max(sigma_max, scale);
  // any positive value is used as an absolute singular-value cutoff.
  double rank_tol = 0.0;
  // External scale floor for the automatic threshold. A matrix that is zero in
  // exact arithmetic carries fp noise proportional to the scale of the data it
  // was assembled from, which its own sigma_max cannot reveal.
  double scale = 0.0;
};

// RankOptions with the scale floor raised to the complex's natural one:
// (max entry evaluation budget sum |c| (len+1)) * max_n ||d^n_pi||. No-op when
// an absolute rank_tol is set.
RankOptions with_complex_scale(const EquivariantComplex& X, const Representation& pi,
                               RankOptions opt);

// SVD of one codifferential with the rank decision spelled out.
struct SvdAnalysis {
  Eigen::VectorXd singular_values;  // descending
  Matrix U, V;                      // full
  double threshold = 0.0;
  int rank = 0;
  double sigma_max = 0.0;
  double gap = 0.0;          // smallest singular value above threshold, 0 if none
  double sigma_below = 0.0;  // largest singular value at/below threshold, 0 if none
};

SvdAnalysis svd_analyze(const Matrix& M, const RankOptions& opt = {});
// Orthonormal basis of the numerical kernel (right singular vectors past the
// rank); columns may be zero-count.
Matrix kernel_basis(const SvdAnalysis& s);
// Orthonormal basis of the numerical image (leading left singular vectors).
Matrix image_basis(const SvdAnalysis& s);

// ---------------------------------------------------------------------------
// Cohomology reports

struct DegreeReport {
  int n = 0;
  int dim_C = 0;
  int rank = 0;             // rank d^n
  int dim_ker = 0;          // dim ker d^n
  int dim_H = 0;            // dim ker d^n - rank d^{n-1}
  double kappa = 0.0;       // +inf when d^n is the zero map
  double gap = 0.0;         // 0 when no positive singular value
  double threshold = 0.0;   // rank cutoff used for d^n
  double sigma_below = 0.0; // bracketing singular values around the cutoff
  double sigma_above = 0.0;
  double laplacian_lambda_min = 0.0;  // meaningful when `unitary` in the report
};

struct CohomologyReport {
  std::string complex_name;
  std::string rep_label;
  int dim_E = 0;
  bool unitary = false;
  double rank_tol = 0.0;  // 0 = automatic per-matrix threshold
  std::vector<DegreeReport> degrees;
  int euler_characteristic = 0;
  bool euler_audit_ok = false;  // sum (-1)^n dim_H == dim_E * chi
};

CohomologyReport cohomology(const EquivariantComplex& X, const Representation& pi,
                            const RankOptions& opt = {});

// Smallest positive singular value of d^n; +inf when d^n is the zero map.
double kazhdan_constant(const EquivariantComplex& X, const Representation& pi, int n,
                        const RankOptions& opt = {});

// ---------------------------------------------------------------------------
// Subspace geometry (p = 2)

// Orthonormal column basis of a subspace of C^ambient.
struct SubspaceBasis {
  Matrix Q;
  int ambient() const { return static_cast<int>(Q.rows()); }
  int dim() const { return static_cast<int>(Q.cols()); }
};

// Orthonormalizes the column span (rank decided as in svd_analyze).
SubspaceBasis subspace_from_columns(const Matrix& span, const RankOptions& opt = {});
// Checks columns are orthonormal within 1e-12; throws VerificationError.
SubspaceBasis subspace_from_orthonormal(Matrix Q);

// closeness(V, W) = || (I - P_W) Q_V ||_2: sup over unit v in V of the
// distance to W. Asymmetric. Zero-dimensional V gives 0.
double closeness(const SubspaceBasis& V, const SubspaceBasis& W);

// The two restated projection inequalities for eps = closeness(V, W),
// c = min ||P_W v|| over unit v in V:  c >= 1 - eps  and
// eps <= sqrt(1 - c^2) * (1 + 1e-10).
struct ClosenessChecks {
  double epsilon = 0.0;
  double c = 0.0;
  double slack_projection = 0.0;  // c - (1 - eps)
  double slack_identity = 0.0;    // sqrt(1-c^2)*(1+1e-10) - eps
  bool ok = false;
};
ClosenessChecks closeness_lemma_checks(const SubspaceBasis& V, const SubspaceBasis& W);

// Perturbation lemmas around "T bounded below by C on V":
//  - operator perturbation: S is bounded below by C - ||T - S|| on V;
//  - subspace transfer (optional W): if S is bounded below by C_W on W and V
//    is eps'-close to W, then S is bounded below by C_W - eps'(1 + ||S||) on V;
//  - image closeness: im S is delta-close to im T, delta = ||T-S|| / gap(S);
//  - kernel closeness: ker T is delta-close to ker S, same delta.
struct PerturbationChecks {
  double C = 0.0;           // min ||T v|| on V
  double epsilon = 0.0;     // ||T - S||
  double min_S_on_V = 0.0;
  double slack_perturbation = 0.0;  // min_S_on_V - (C - epsilon)
  double delta = 0.0;               // epsilon / gap(S)
  double image_closeness = 0.0;
  double slack_image = 0.0;  // delta - image_closeness
  double kernel_closeness = 0.0;
  double slack_kernel = 0.0;  // delta - kernel_closeness
  double eps_transfer = 0.0;      // closeness(V, W), when W given
  double C_W = 0.0;               // min ||S w|| on W, when W given
  double slack_transfer = 0.0;    // min_S_on_V - (C_W - eps_transfer (1 + ||S||))
  bool ok = false;
};
PerturbationChecks bounded_below_perturbation_check(const Matrix& T, const Matrix& S,
                                                    const SubspaceBasis& V,
                                                    const SubspaceBasis* W = nullptr,
                                                    const RankOptions& opt = {});

// Quotient comparison: lifts Tlift, Slift vanish on V resp. W, V is eps-close
// to W, ||Tlift - Slift|| = delta; if the induced map on E/V is bounded below
// by C then the induced map on E/W is bounded below by C(1 - 2 eps) - delta.
struct QuotientComparisonCheck {
  double C = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double predicted = 0.0;  // C(1 - 2 eps) - delta
  double measured = 0.0;   // min ||Slift y|| over unit y orthogonal to W
  double slack = 0.0;      // measured - predicted
  bool ok = false;
};
QuotientComparisonCheck quotient_comparison_check(const Matrix& Tlift, const Matrix& Slift,
                                                  const SubspaceBasis& V, const SubspaceBasis& W);

// ---------------------------------------------------------------------------
// Deformation machinery

// Certified upper bound on ||d^n_pi - d^n_rho||_2 over ALL eps-deformations
// rho, via per-term telescoping ||pi(w) - rho(w)|| <= len(w) eps B^{len-1},
// B = max_s ||pi(s)||_2 + eps over generators and inverses. Monotone in eps.
double deformation_bound(const EquivariantComplex& X, const Representation& pi, double eps, int n);

struct KernelClosenessReport {
  bool comparable = false;  // kernel dimensions agree
  int dim_ker_pi = 0;
  int dim_ker_rho = 0;
  double drift = 0.0;     // ||d^n_pi - d^n_rho||_2
  double bound = 0.0;     // drift / kappa_n(pi)
  double measured = 0.0;  // closeness(ker d^n_rho, ker d^n_pi)
};
// Certified kernel closeness under drift: closeness(ker d^n_rho, ker d^n_pi)
// is at most ||d^n_pi - d^n_rho|| / kappa_n(pi). kappa_n(pi) = 0 is an error.
KernelClosenessReport kernel_closeness_bound(const EquivariantComplex& X, const Representation& pi,
                                             const Representation& rho, int n,
                                             const RankOptions& opt = {});

// One evaluation of the certified vanishing chain at a given eps:
// eta = delta_n / kappa_n, adjoint codifferential on ker d^n_rho bounded below
// by max(kappa_{n-1}(1 - eta) - eta ||d^{n-1}|| - delta_{n-1},
//         kappa_{n-1}(1 - 2 eta) - delta_{n-1});
// when ker d^n_pi = 0 the condition is delta_n < kappa_n instead.
struct ChainEvaluation {
  double eps = 0.0;
  bool certified = false;
  double delta_n = 0.0;        // deformation_bound at degree n
  double delta_nm1 = 0.0;      // deformation_bound at degree n-1 (0 when n = 0)
  double eta = 0.0;
  double lower_bound = 0.0;    // certified bound for the adjoint codifferential
  double drift_bound = 0.0;    // c(eps): kappa_{n-1}(rho) >= kappa_{n-1}(pi) - c
  bool injective_case = false; // ker d^n_pi = 0 route
};
ChainEvaluation deformation_chain(const EquivariantComplex& X, const Representation& pi, int n,
                                  double eps, const RankOptions& opt = {});

// Largest eps on a 60-point log grid over [1e-8, 10] whose chain certifies
// (bisection; the chain is monotone in eps). Requires dim H^n(pi) = 0.
struct SufficientEpsilon {
  bool found = false;
  double epsilon_star = 0.0;  // 0 when not found
  ChainEvaluation at_star;    // chain data at epsilon_star
  std::string diagnostic;
};
SufficientEpsilon sufficient_epsilon(const EquivariantComplex& X, const Representation& pi, int n,
                                     const RankOptions& opt = {});

// ---------------------------------------------------------------------------
// Criteria and certificates

struct LaplacianCriterion {
  bool vanishes = false;  // lambda_min > tau_gap
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double tau_gap = 0.0;
};
// Unitary pi only (refuses otherwise). tau_gap < 0 means the default
// 1e-9 * max_k lambda_max(Delta^k) (complex-wide scale).
LaplacianCriterion laplacian_criterion(const EquivariantComplex& X, const Representation& pi,
                                       int n, double tau_gap = -1.0);

struct DualityCheck {
  int dim_H = 0;
  bool bounded_below = false;  // (d^{n-1})^* restricted to ker d^n
  double lower_bound = 0.0;    // +inf when ker d^n = 0
  double kappa_nm1 = 0.0;
  bool matches_kappa = false;  // |lower_bound - kappa_{n-1}| <= 1e-8, when applicable
};
// dim H^n = 0 iff the adjoint of d^{n-1} is bounded below on ker d^n; when
// n >= 1 and H^n = 0 the bound equals kappa_{n-1}.
DualityCheck duality_check(const EquivariantComplex& X, const Representation& pi, int n,
                           const RankOptions& opt = {});

struct WeilCertificate {
  bool rigid = false;  // dim H^1(Ad phi) = 0
  int dim_H1 = 0;
  int ad_dim = 0;
  double kappa_0 = 0.0;
  double kappa_1 = 0.0;
};
WeilCertificate weil_rigidity_check(const GroupPresentation& P, const Representation& phi,
                                    const RankOptions& opt = {});

}  // namespace cohomolab
