#include "cohomolab/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohomolab/errors.hpp"
#include "cohomolab/linalg.hpp"

namespace cohomolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// min ||M x|| over unit x; +inf for a map with zero-dimensional domain.
double min_gain(const Matrix& M) {
  if (M.cols() == 0) return kInf;
  if (M.rows() < M.cols()) return 0.0;  // kernel forced by shape
  if (M.rows() == 0) return 0.0;        // unreachable given the above, kept for clarity
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(M.cols() - 1);
}

Matrix orthogonal_complement_basis(const SubspaceBasis& W) {
  // Full SVD of Q_W: right... complement lives in the left factor of Q_W Q_W^H;
  // easier: complement = kernel of Q_W^H (ambient -> dim W).
  Matrix A = W.Q.adjoint();
  if (A.rows() == 0) return Matrix::Identity(W.ambient(), W.ambient());
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  int rank = 0;
  const auto& sv = svd.singularValues();
  double tau = static_cast<double>(std::max(A.rows(), A.cols())) *
               std::numeric_limits<double>::epsilon() * (sv.size() ? sv(0) : 0.0);
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

}  // namespace

RankOptions with_complex_scale(const EquivariantComplex& X, const Representation& pi,
                               RankOptions opt) {
  if (opt.rank_tol > 0.0) return opt;
  double budget = 1.0;
  for (int k = 1; k <= X.max_degree; ++k)
    for (int i = 0; i < X.cells[k]; ++i)
      for (int j = 0; j < X.cells[k - 1]; ++j) {
        double entry = 0.0;
        for (const auto& [word, coeff] : X.boundary(k, i, j).terms())
          entry += std::abs(static_cast<double>(coeff)) *
                   static_cast<double>(word.letters.size() + 1);
        budget = std::max(budget, entry);
      }
  double sigma = 0.0;
  for (int n = 0; n <= X.max_degree; ++n)
    sigma = std::max(sigma, spectral_norm(codifferential(X, pi, n)));
  opt.scale = std::max(opt.scale, budget * sigma);
  return opt;
}

SvdAnalysis svd_analyze(const Matrix& M, const RankOptions& opt) {
  SvdAnalysis out;
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  if (rows == 0 || cols == 0) {
    out.singular_values.resize(0);
    out.U = Matrix::Identity(rows, rows);
    out.V = Matrix::Identity(cols, cols);
    out.threshold = opt.rank_tol > 0.0 ? opt.rank_tol : 0.0;
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  out.U = svd.matrixU();
  out.V = svd.matrixV();
  out.sigma_max = out.singular_values(0);
  out.threshold = opt.rank_tol > 0.0
                      ? opt.rank_tol
                      : static_cast<double>(std::max(rows, cols)) *
                            std::numeric_limits<double>::epsilon() *
                            std::max(out.sigma_max, opt.scale);
  for (int i = 0; i < out.singular_values.size(); ++i) {
    const double s = out.singular_values(i);
    if (s > out.threshold) {
      out.rank = i + 1;
      out.gap = s;  // values are descending: the last one above wins
    } else {
      out.sigma_below = s;  // first value at/below the cutoff is the largest such
      break;
    }
  }
  return out;
}

Matrix kernel_basis(const SvdAnalysis& s) {
  return s.V.rightCols(s.V.cols() - s.rank);
}

Matrix image_basis(const SvdAnalysis& s) {
  return s.U.leftCols(s.rank);
}

CohomologyReport cohomology(const EquivariantComplex& X, const Representation& pi,
                            const RankOptions& opt) {
  CohomologyReport report;
  report.complex_name = X.name;
  report.rep_label = pi.label;
  report.dim_E = pi.dim;
  report.unitary = is_unitary(pi);
  report.rank_tol = opt.rank_tol;
  report.euler_characteristic = euler_characteristic(X);

  const RankOptions scaled = with_complex_scale(X, pi, opt);
  std::vector<SvdAnalysis> svds(X.max_degree + 1);
  for (int n = 0; n <= X.max_degree; ++n) svds[n] = svd_analyze(codifferential(X, pi, n), scaled);

  long long alternating = 0;
  for (int n = 0; n <= X.max_degree; ++n) {
    DegreeReport deg;
    deg.n = n;
    deg.dim_C = pi.dim * X.cells[n];
    deg.rank = svds[n].rank;
    deg.dim_ker = deg.dim_C - deg.rank;
    const int rank_prev = n > 0 ? svds[n - 1].rank : 0;
    deg.dim_H = deg.dim_ker - rank_prev;
    deg.kappa = svds[n].rank == 0 ? kInf : svds[n].gap;
    deg.gap = svds[n].gap;
    deg.threshold = svds[n].threshold;
    deg.sigma_below = svds[n].sigma_below;
    deg.sigma_above = svds[n].gap;
    if (report.unitary) {
      Matrix delta = laplacian(X, pi, n);
      Eigen::SelfAdjointEigenSolver<Matrix> es(delta, Eigen::EigenvaluesOnly);
      deg.laplacian_lambda_min = es.eigenvalues()(0);
    }
    alternating += (n % 2 == 0 ? 1LL : -1LL) * deg.dim_H;
    report.degrees.push_back(deg);
  }
  report.euler_audit_ok =
      alternating == static_cast<long long>(report.dim_E) * report.euler_characteristic;
  return report;
}

double kazhdan_constant(const EquivariantComplex& X, const Representation& pi, int n,
                        const RankOptions& opt) {
  SvdAnalysis s = svd_analyze(codifferential(X, pi, n), with_complex_scale(X, pi, opt));
  return s.rank == 0 ? kInf : s.gap;
}

SubspaceBasis subspace_from_columns(const Matrix& span, const RankOptions& opt) {
  SvdAnalysis s = svd_analyze(span, opt);
  return SubspaceBasis{image_basis(s)};
}

SubspaceBasis subspace_from_orthonormal(Matrix Q) {
  if (Q.cols() > 0) {
    Matrix gram = Q.adjoint() * Q;
    double defect = (gram - Matrix::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-12)
      throw VerificationError("subspace basis is not orthonormal (defect " +
                              std::to_string(defect) + ")");
  }
  return SubspaceBasis{std::move(Q)};
}

double closeness(const SubspaceBasis& V, const SubspaceBasis& W) {
  if (V.dim() == 0) return 0.0;
  if (V.ambient() != W.ambient())
    throw VerificationError("closeness: subspaces live in different ambient spaces");
  Matrix residual = V.Q - W.Q * (W.Q.adjoint() * V.Q);
  return spectral_norm(residual);
}

ClosenessChecks closeness_lemma_checks(const SubspaceBasis& V, const SubspaceBasis& W) {
  ClosenessChecks out;
  out.epsilon = closeness(V, W);
  if (V.dim() == 0) {
    out.c = 1.0;
  } else {
    Matrix overlap = W.Q.adjoint() * V.Q;  // dim W x dim V
    out.c = W.dim() >= V.dim() ? min_gain(overlap) : 0.0;
  }
  out.slack_projection = out.c - (1.0 - out.epsilon);
  double root = std::sqrt(std::max(0.0, 1.0 - out.c * out.c));
  out.slack_identity = root * (1.0 + 1e-10) - out.epsilon;
  out.ok = out.slack_projection >= -1e-9 && out.slack_identity >= -1e-9;
  return out;
}

PerturbationChecks bounded_below_perturbation_check(const Matrix& T, const Matrix& S,
                                                    const SubspaceBasis& V,
                                                    const SubspaceBasis* W,
                                                    const RankOptions& opt) {
  if (T.rows() != S.rows() || T.cols() != S.cols())
    throw VerificationError("perturbation check: operators have different shapes");
  PerturbationChecks out;
  out.C = min_gain(T * V.Q);
  out.epsilon = spectral_norm(T - S);
  out.min_S_on_V = min_gain(S * V.Q);
  out.slack_perturbation = out.min_S_on_V - (out.C - out.epsilon);

  SvdAnalysis sS = svd_analyze(S, opt);
  SvdAnalysis sT = svd_analyze(T, opt);
  out.delta = sS.rank == 0 ? (out.epsilon > 0.0 ? kInf : 0.0) : out.epsilon / sS.gap;
  SubspaceBasis im_S{image_basis(sS)}, im_T{image_basis(sT)};
  SubspaceBasis ker_S{kernel_basis(sS)}, ker_T{kernel_basis(sT)};
  out.image_closeness = closeness(im_S, im_T);
  out.slack_image = out.delta - out.image_closeness;
  out.kernel_closeness = closeness(ker_T, ker_S);
  out.slack_kernel = out.delta - out.kernel_closeness;

  bool transfer_ok = true;
  if (W != nullptr) {
    out.eps_transfer = closeness(V, *W);
    out.C_W = min_gain(S * W->Q);
    double predicted = out.C_W - out.eps_transfer * (1.0 + spectral_norm(S));
    out.slack_transfer = out.min_S_on_V - predicted;
    transfer_ok = out.slack_transfer >= -1e-9;
  }
  out.ok = out.slack_perturbation >= -1e-9 && out.slack_image >= -1e-9 &&
           out.slack_kernel >= -1e-9 && transfer_ok;
  return out;
}

QuotientComparisonCheck quotient_comparison_check(const Matrix& Tlift, const Matrix& Slift,
                                                  const SubspaceBasis& V,
                                                  const SubspaceBasis& W) {
  if (Tlift.rows() != Slift.rows() || Tlift.cols() != Slift.cols())
    throw VerificationError("quotient comparison: lifts have different shapes");
  QuotientComparisonCheck out;
  Matrix v_perp = orthogonal_complement_basis(V);
  Matrix w_perp = orthogonal_complement_basis(W);
  // Zero-dimensional quotients: nothing is claimed (C = 0 keeps `predicted`
  // finite) and nothing can fail (measured = +inf).
  out.C = v_perp.cols() == 0 ? 0.0 : min_gain(Tlift * v_perp);
  out.epsilon = closeness(V, W);
  out.delta = spectral_norm(Tlift - Slift);
  out.predicted = out.C * (1.0 - 2.0 * out.epsilon) - out.delta;
  out.measured = min_gain(Slift * w_perp);
  out.slack = out.measured - out.predicted;
  out.ok = out.slack >= -1e-9;
  return out;
}

double deformation_bound(const EquivariantComplex& X, const Representation& pi, double eps,
                         int n) {
  if (n < 0 || n > X.max_degree) throw VerificationError("deformation_bound: degree out of range");
  if (n == X.max_degree) return 0.0;  // d^{max} is the zero map for every rep
  double B = 0.0;
  for (int g = 0; g < pi.generator_count(); ++g) {
    B = std::max(B, spectral_norm(pi.gen_images[g]));
    B = std::max(B, spectral_norm(pi.gen_inverses[g]));
  }
  B += eps;
  const int rows = X.cells[n + 1];
  const int cols = X.cells[n];
  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (const auto& [word, coeff] : X.boundary(n + 1, i, j).terms()) {
        const double len = static_cast<double>(word.letters.size());
        if (len == 0) continue;  // identity terms do not move under deformation
        beta(i, j) += std::abs(static_cast<double>(coeff)) * len * eps * std::pow(B, len - 1.0);
      }
  if (rows == 0 || cols == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(beta);
  return svd.singularValues()(0);
}

KernelClosenessReport kernel_closeness_bound(const EquivariantComplex& X,
                                             const Representation& pi, const Representation& rho,
                                             int n, const RankOptions& opt) {
  Matrix d_pi = codifferential(X, pi, n);
  Matrix d_rho = codifferential(X, rho, n);
  if (d_pi.rows() != d_rho.rows() || d_pi.cols() != d_rho.cols())
    throw VerificationError("kernel closeness: representations have different dimensions");
  SvdAnalysis s_pi = svd_analyze(d_pi, with_complex_scale(X, pi, opt));
  SvdAnalysis s_rho = svd_analyze(d_rho, with_complex_scale(X, rho, opt));
  KernelClosenessReport out;
  out.dim_ker_pi = static_cast<int>(d_pi.cols()) - s_pi.rank;
  out.dim_ker_rho = static_cast<int>(d_rho.cols()) - s_rho.rank;
  out.comparable = out.dim_ker_pi == out.dim_ker_rho;
  out.drift = spectral_norm(d_pi - d_rho);
  const double kappa = s_pi.rank == 0 ? kInf : s_pi.gap;
  if (kappa <= 0.0) throw VerificationError("kernel closeness: kappa_n(pi) = 0");
  out.bound = std::isinf(kappa) ? 0.0 : out.drift / kappa;
  SubspaceBasis ker_pi{kernel_basis(s_pi)};
  SubspaceBasis ker_rho{kernel_basis(s_rho)};
  out.measured = closeness(ker_rho, ker_pi);
  return out;
}

ChainEvaluation deformation_chain(const EquivariantComplex& X, const Representation& pi, int n,
                                  double eps, const RankOptions& raw_opt) {
  if (n < 0 || n > X.max_degree) throw VerificationError("deformation_chain: degree out of range");
  const RankOptions opt = with_complex_scale(X, pi, raw_opt);
  SvdAnalysis s_n = svd_analyze(codifferential(X, pi, n), opt);
  const int dim_ker = static_cast<int>(pi.dim) * X.cells[n] - s_n.rank;
  const int rank_prev =
      n > 0 ? svd_analyze(codifferential(X, pi, n - 1), opt).rank : 0;
  if (dim_ker - rank_prev != 0)
    throw VerificationError("deformation_chain: dim H^n(pi) != 0, nothing to preserve");

  ChainEvaluation out;
  out.eps = eps;
  out.delta_n = deformation_bound(X, pi, eps, n);
  out.delta_nm1 = n > 0 ? deformation_bound(X, pi, eps, n - 1) : 0.0;
  const double kappa_n = s_n.rank == 0 ? kInf : s_n.gap;

  if (dim_ker == 0) {
    // ker d^n_pi = 0: any rho with ||d^n_rho - d^n_pi|| < kappa_n keeps the
    // codifferential injective, so H^n(rho) = 0 outright.
    out.injective_case = true;
    out.certified = out.delta_n < kappa_n;
    out.lower_bound = kappa_n - out.delta_n;
    out.drift_bound = 0.0;  // im d^{n-1} sits inside ker d^n = 0: kappa_{n-1} = +inf for both
    return out;
  }

  // dim ker = rank_prev >= 1, so n >= 1 and kappa_{n-1} is finite.
  Matrix d_prev = codifferential(X, pi, n - 1);
  SvdAnalysis s_prev = svd_analyze(d_prev, opt);
  const double kappa_prev = s_prev.gap;
  out.eta = std::isinf(kappa_n) ? 0.0 : out.delta_n / kappa_n;
  const double lb_transfer =
      kappa_prev * (1.0 - out.eta) - out.eta * spectral_norm(d_prev) - out.delta_nm1;
  const double lb_quotient = kappa_prev * (1.0 - 2.0 * out.eta) - out.delta_nm1;
  out.lower_bound = std::max(lb_transfer, lb_quotient);
  out.certified = out.eta < 1.0 && out.lower_bound > 0.0;
  out.drift_bound = kappa_prev - out.lower_bound;
  return out;
}

SufficientEpsilon sufficient_epsilon(const EquivariantComplex& X, const Representation& pi, int n,
                                     const RankOptions& opt) {
  constexpr int kGridSize = 60;
  constexpr double kLo = 1e-8, kHi = 10.0;
  auto grid_point = [&](int i) {
    return kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kGridSize - 1));
  };

  SufficientEpsilon out;
  ChainEvaluation first = deformation_chain(X, pi, n, grid_point(0), opt);  // hypothesis check
  if (!first.certified) {
    std::ostringstream os;
    os << "chain does not certify even at eps = " << grid_point(0)
       << " (lower bound " << first.lower_bound << ")";
    out.diagnostic = os.str();
    return out;
  }
  int lo = 0, hi = kGridSize - 1;  // invariant: grid[lo] certified
  if (deformation_chain(X, pi, n, grid_point(hi), opt).certified) {
    lo = hi;
  } else {
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      (deformation_chain(X, pi, n, grid_point(mid), opt).certified ? lo : hi) = mid;
    }
  }
  out.found = true;
  out.epsilon_star = grid_point(lo);
  out.at_star = deformation_chain(X, pi, n, out.epsilon_star, opt);
  return out;
}

LaplacianCriterion laplacian_criterion(const EquivariantComplex& X, const Representation& pi,
                                       int n, double tau_gap) {
  if (!is_unitary(pi))
    throw VerificationError("laplacian criterion requires a unitary representation");
  Matrix delta = laplacian(X, pi, n);
  LaplacianCriterion out;
  if (delta.rows() == 0) {
    out.tau_gap = tau_gap < 0.0 ? 0.0 : tau_gap;
    out.vanishes = true;  // zero-dimensional cochain space: nothing survives
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta, Eigen::EigenvaluesOnly);
  out.lambda_min = es.eigenvalues()(0);
  out.lambda_max = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (tau_gap >= 0.0) {
    out.tau_gap = tau_gap;
  } else {
    // Default gap at the scale of the whole complex: a Laplacian that is zero
    // in exact arithmetic has lambda_max at fp-noise level, which must not set
    // its own passing bar.
    double scale = 0.0;
    for (int k = 0; k <= X.max_degree; ++k) {
      Matrix dk = laplacian(X, pi, k);
      if (dk.rows() == 0) continue;
      Eigen::SelfAdjointEigenSolver<Matrix> esk(dk, Eigen::EigenvaluesOnly);
      scale = std::max(scale, esk.eigenvalues()(esk.eigenvalues().size() - 1));
    }
    out.tau_gap = 1e-9 * scale;
  }
  out.vanishes = out.lambda_min > out.tau_gap;
  return out;
}

DualityCheck duality_check(const EquivariantComplex& X, const Representation& pi, int n,
                           const RankOptions& raw_opt) {
  DualityCheck out;
  const RankOptions opt = with_complex_scale(X, pi, raw_opt);
  SvdAnalysis s_n = svd_analyze(codifferential(X, pi, n), opt);
  Matrix ker = kernel_basis(s_n);
  SvdAnalysis s_prev = n > 0 ? svd_analyze(codifferential(X, pi, n - 1), opt) : SvdAnalysis{};
  const int rank_prev = n > 0 ? s_prev.rank : 0;
  out.dim_H = static_cast<int>(ker.cols()) - rank_prev;
  out.kappa_nm1 = (n == 0 || s_prev.rank == 0) ? kInf : s_prev.gap;

  if (ker.cols() == 0) {
    out.bounded_below = true;
    out.lower_bound = kInf;
  } else if (n == 0) {
    out.bounded_below = false;  // the adjoint out of degree -1 is the zero map
    out.lower_bound = 0.0;
  } else {
    Matrix restricted = codifferential(X, pi, n - 1).adjoint() * ker;
    out.lower_bound = min_gain(restricted);
    const double tol = 100.0 * s_prev.threshold + 1e-12;
    out.bounded_below = out.lower_bound > tol;
  }
  if (std::isinf(out.lower_bound) && std::isinf(out.kappa_nm1)) {
    out.matches_kappa = true;
  } else {
    out.matches_kappa = std::abs(out.lower_bound - out.kappa_nm1) <= 1e-8 * (1.0 + out.kappa_nm1);
  }
  return out;
}

WeilCertificate weil_rigidity_check(const GroupPresentation& P, const Representation& phi,
                                    const RankOptions& opt) {
  verify_representation(phi, P);
  EquivariantComplex X = presentation_complex(P);
  Representation ad = adjoint_rep(phi);
  CohomologyReport report = cohomology(X, ad, opt);
  WeilCertificate out;
  out.ad_dim = ad.dim;
  out.dim_H1 = report.degrees.at(1).dim_H;
  out.rigid = out.dim_H1 == 0;
  out.kappa_0 = report.degrees.at(0).kappa;
  out.kappa_1 = report.degrees.at(1).kappa;
  return out;
}

}  // namespace cohomolab
