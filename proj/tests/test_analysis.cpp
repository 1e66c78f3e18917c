#include <cmath>
#include <random>

#include "cohomolab/analysis.hpp"
#include "cohomolab/errors.hpp"
#include "cohomolab/linalg.hpp"
#include "doctest.h"

using namespace cohomolab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Representation char_rep(std::vector<double> turns, std::string label = "chi") {
  std::vector<Matrix> images;
  for (double t : turns) {
    Matrix m(1, 1);
    m(0, 0) = std::polar(1.0, 2.0 * kPi * t);
    images.push_back(m);
  }
  return make_representation(std::move(images), std::move(label));
}

// The sufficient-epsilon search grid: 60 log-spaced points on [1e-8, 10].
double grid_point(int i) { return 1e-8 * std::pow(1e9, static_cast<double>(i) / 59.0); }

struct Frozen {
  const char* preset;
  std::vector<double> turns;
  std::vector<int> dims;
};

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("svd_analyze agrees with an LU rank oracle on engineered ranks") {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 25; ++trial) {
    int m = 2 + static_cast<int>(rng() % 6);
    int n = 2 + static_cast<int>(rng() % 6);
    int r = static_cast<int>(rng() % (std::min(m, n) + 1));
    Matrix M = r == 0 ? Matrix::Zero(m, n).eval()
                      : (random_gaussian(m, r, rng) * random_gaussian(r, n, rng)).eval();
    SvdAnalysis s = svd_analyze(M);
    Eigen::FullPivLU<Matrix> lu(M);
    lu.setThreshold(1e-10);
    CHECK(s.rank == static_cast<int>(lu.rank()));
    CHECK(s.rank == r);
    Matrix K = kernel_basis(s);
    CHECK(K.cols() == n - r);
    if (K.cols() > 0) {
      CHECK(spectral_norm(M * K) < 1e-10 * (1.0 + s.sigma_max));
      CHECK(spectral_norm(K.adjoint() * K - Matrix::Identity(K.cols(), K.cols())) < 1e-12);
    }
    Matrix Q = image_basis(s);
    CHECK(Q.cols() == r);
    CHECK(spectral_norm(M - Q * (Q.adjoint() * M)) < 1e-10 * (1.0 + s.sigma_max));
  }
  // empty shapes keep the conventions
  SvdAnalysis empty = svd_analyze(Matrix::Zero(0, 3));
  CHECK(empty.rank == 0);
  CHECK(kernel_basis(empty).cols() == 3);
  CHECK(svd_analyze(Matrix::Zero(3, 0)).rank == 0);
  // an absolute cutoff wins over the automatic rule
  Matrix tiny = 1e-6 * Matrix::Identity(2, 2);
  CHECK(svd_analyze(tiny, RankOptions{1e-3}).rank == 0);
  CHECK(svd_analyze(tiny).rank == 2);
}

TEST_CASE("complex-scale threshold kills assembly noise the per-matrix rule keeps") {
  EquivariantComplex X = presentation_complex(presentation_Z3());
  Representation pi = char_rep({1.0 / 3.0});
  Matrix D1 = codifferential(X, pi, 1);  // 1 + w + w^2 = 0 up to fp noise
  SvdAnalysis raw = svd_analyze(D1, RankOptions{});
  if (raw.sigma_max > 0.0) CHECK(raw.rank == 1);  // its own sigma_max hides the noise floor
  RankOptions scaled = with_complex_scale(X, pi, RankOptions{});
  CHECK(scaled.scale > 1.0);
  SvdAnalysis s = svd_analyze(D1, scaled);
  CHECK(s.rank == 0);
  CHECK(s.threshold > raw.threshold);
  // absolute rank_tol passes through untouched
  RankOptions manual = with_complex_scale(X, pi, RankOptions{0.5});
  CHECK(manual.rank_tol == 0.5);
  CHECK(manual.scale == 0.0);
}

TEST_CASE("frozen cohomology tables for the preset characters") {
  std::vector<Frozen> table = {
      {"Z", {0.0}, {1, 1}},
      {"Z", {0.25}, {0, 0}},
      {"Z2", {0.0, 0.0}, {1, 2, 1}},
      {"Z2", {0.5, 0.5}, {0, 0, 0}},
      {"Z3", {1.0 / 3.0}, {0, 0, 1}},
  };
  for (const auto&[preset, turns, dims] : table) {
    GroupPresentation P = preset_presentation(preset);
    EquivariantComplex X = presentation_complex(P);
    CohomologyReport r = cohomology(X, char_rep(turns));
    REQUIRE(static_cast<int>(r.degrees.size()) == X.max_degree + 1);
    for (size_t n = 0; n < dims.size(); ++n) CHECK(r.degrees[n].dim_H == dims[n]);
    CHECK(r.euler_audit_ok);
    CHECK(r.unitary);
  }
  // frozen kappas
  EquivariantComplex X2 = presentation_complex(presentation_Z2());
  CohomologyReport sign = cohomology(X2, char_rep({0.5, 0.5}));
  CHECK(sign.degrees[0].kappa == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sign.degrees[1].kappa == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::isinf(sign.degrees[2].kappa));  // d^2 is the zero map
  CHECK(sign.degrees[1].laplacian_lambda_min == doctest::Approx(8.0).epsilon(1e-13));
  EquivariantComplex X3 = presentation_complex(presentation_Z3());
  CohomologyReport z3 = cohomology(X3, char_rep({1.0 / 3.0}));
  CHECK(z3.degrees[0].kappa == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(std::isinf(z3.degrees[1].kappa));  // 1 + w + w^2 vanishes
  CHECK(z3.degrees[1].laplacian_lambda_min == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("kazhdan constants match the closed forms 2 sin(theta/2)") {
  EquivariantComplex X = presentation_complex(presentation_Z());
  for (double turn : {0.5, 0.25, 1.0 / 3.0}) {
    double theta = 2.0 * kPi * turn;
    double k = kazhdan_constant(X, char_rep({turn}), 0);
    CHECK(k == doctest::Approx(2.0 * std::sin(theta / 2.0)).epsilon(1e-12));
  }
  for (int N : {4, 8, 16, 64}) {
    double k = kazhdan_constant(X, circle_discretization(N), 0);
    CHECK(std::abs(k - 2.0 * std::sin(kPi / N)) < 1e-10);
  }
  // direct sums take the min of the parts
  std::mt19937_64 rng(55);
  for (int t = 0; t < 5; ++t) {
    Representation a = random_unitary_rep(presentation_Z(), 2, 700 + t);
    Representation b = random_unitary_rep(presentation_Z(), 3, 800 + t);
    double ka = kazhdan_constant(X, a, 0);
    double kb = kazhdan_constant(X, b, 0);
    double ks = kazhdan_constant(X, direct_sum(a, b), 0);
    CHECK(ks == doctest::Approx(std::min(ka, kb)).epsilon(1e-10));
  }
}

TEST_CASE("closeness equals the principal-angle formula") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    int ambient = 4 + static_cast<int>(rng() % 7);
    int kw = 1 + static_cast<int>(rng() % (ambient - 2));
    int kv = 1 + static_cast<int>(rng() % kw);
    SubspaceBasis W = subspace_from_columns(random_gaussian(ambient, kw, rng));
    SubspaceBasis V = subspace_from_columns(random_gaussian(ambient, kv, rng));
    Eigen::JacobiSVD<Matrix> svd(W.Q.adjoint() * V.Q);
    double sigma_min = svd.singularValues()(kv - 1);
    double expected = std::sqrt(std::max(0.0, 1.0 - sigma_min * sigma_min));
    CHECK(closeness(V, W) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(closeness(V, V) < 1e-13);
  }
  // a strictly larger V cannot stay close to W
  SubspaceBasis W1 = subspace_from_columns(random_gaussian(6, 1, rng));
  SubspaceBasis V2 = subspace_from_columns(random_gaussian(6, 2, rng));
  CHECK(closeness(V2, W1) == doctest::Approx(1.0).epsilon(1e-12));
  SubspaceBasis V0{Matrix::Zero(6, 0)};
  CHECK(closeness(V0, W1) == 0.0);
  ClosenessChecks empty = closeness_lemma_checks(V0, W1);
  CHECK(empty.c == 1.0);
  CHECK(empty.ok);
}

TEST_CASE("closeness lemma slacks stay non-negative on random pairs") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 30; ++t) {
    int ambient = 4 + static_cast<int>(rng() % 9);
    int kw = 1 + static_cast<int>(rng() % (ambient - 1));
    int kv = 1 + static_cast<int>(rng() % kw);
    SubspaceBasis W = subspace_from_columns(random_gaussian(ambient, kw, rng));
    SubspaceBasis V =
        subspace_from_columns(W.Q.leftCols(kv) + 0.1 * random_gaussian(ambient, kv, rng));
    ClosenessChecks cc = closeness_lemma_checks(V, W);
    CHECK(cc.ok);
    CHECK(cc.slack_projection >= -1e-9);
    CHECK(cc.slack_identity >= -1e-9);
    CHECK(cc.c <= 1.0 + 1e-12);
  }
}

TEST_CASE("perturbation checks: bounded-below transfer and image/kernel closeness") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    int rows = 6 + static_cast<int>(rng() % 4);
    int cols = rows - 2;
    Matrix T = random_gaussian(rows, cols, rng);
    Matrix E = random_gaussian(rows, cols, rng);
    Matrix S = T + (0.02 / spectral_norm(E)) * E;
    SubspaceBasis V = subspace_from_columns(random_gaussian(cols, 2, rng));
    SubspaceBasis W = subspace_from_columns(V.Q + 0.05 * random_gaussian(cols, 2, rng));
    PerturbationChecks pc = bounded_below_perturbation_check(T, S, V, &W);
    CHECK(pc.ok);
    CHECK(pc.epsilon == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(pc.slack_perturbation >= -1e-9);
    CHECK(pc.slack_image >= -1e-9);
    CHECK(pc.slack_kernel >= -1e-9);
    CHECK(pc.slack_transfer >= -1e-9);
    CHECK(pc.image_closeness <= pc.delta + 1e-9);
  }
  CHECK_THROWS_AS(bounded_below_perturbation_check(Matrix::Zero(2, 2), Matrix::Zero(3, 3),
                                                   SubspaceBasis{Matrix::Identity(2, 1)}),
                  VerificationError);
}

TEST_CASE("quotient comparison keeps the predicted lower bound") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 20; ++t) {
    int n = 5 + static_cast<int>(rng() % 5);
    SubspaceBasis V = subspace_from_columns(random_gaussian(n, 2, rng));
    SubspaceBasis W = subspace_from_columns(V.Q + 0.05 * random_gaussian(n, 2, rng));
    Matrix R = random_gaussian(n, n, rng);
    Matrix Tlift = R - (R * V.Q) * V.Q.adjoint();
    Matrix Slift = R - (R * W.Q) * W.Q.adjoint();
    QuotientComparisonCheck qc = quotient_comparison_check(Tlift, Slift, V, W);
    CHECK(qc.ok);
    CHECK(qc.slack >= -1e-9);
  }
  // V spanning everything leaves an empty quotient: nothing is claimed
  SubspaceBasis full = subspace_from_orthonormal(Matrix::Identity(3, 3));
  QuotientComparisonCheck qc =
      quotient_comparison_check(Matrix::Zero(3, 3), Matrix::Zero(3, 3), full, full);
  CHECK(qc.ok);
  CHECK(std::isinf(qc.measured));
}

TEST_CASE("subspace constructors") {
  std::mt19937_64 rng(61);
  Matrix q = random_gaussian(5, 1, rng);
  Matrix span(5, 2);
  span.col(0) = q;
  span.col(1) = 2.0 * q;  // rank deficient
  CHECK(subspace_from_columns(span).dim() == 1);
  CHECK_THROWS_AS(subspace_from_orthonormal(span), VerificationError);
  SubspaceBasis ok = subspace_from_orthonormal(q / q.norm());
  CHECK(ok.dim() == 1);
}

TEST_CASE("deformation bound: monotone, exact for the circle edge, zero at the top") {
  EquivariantComplex XZ = presentation_complex(presentation_Z());
  Representation chi = char_rep({0.25});
  CHECK(deformation_bound(XZ, chi, 0.3, 0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(deformation_bound(XZ, chi, 0.3, XZ.max_degree) == 0.0);
  EquivariantComplex X2 = presentation_complex(presentation_Z2());
  Representation sign = char_rep({0.5, 0.5});
  double prev = 0.0;
  for (double eps : {1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
    double b = deformation_bound(X2, sign, eps, 1);
    CHECK(b > prev);
    prev = b;
  }
  // the bound dominates the measured drift of actual deformations
  GroupPresentation P2 = presentation_Z2();
  for (int n : {0, 1}) {
    Matrix d_pi = codifferential(X2, sign, n);
    for (int s = 0; s < 10; ++s) {
      Representation rho =
          random_deformation(sign, P2, {DeformationKind::diagonal_perturbation, 0.05, 900u + s});
      double drift = spectral_norm(d_pi - codifferential(X2, rho, n));
      CHECK(drift <= deformation_bound(X2, sign, 0.05, n) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("kernel closeness bound: comparable deformations and the flatten counterexample") {
  GroupPresentation P2 = presentation_Z2();
  EquivariantComplex X2 = presentation_complex(P2);
  Representation sign = char_rep({0.5, 0.5});
  for (int s = 0; s < 10; ++s) {
    Representation rho =
        random_deformation(sign, P2, {DeformationKind::diagonal_perturbation, 0.05, 70u + s});
    KernelClosenessReport kr = kernel_closeness_bound(X2, sign, rho, 1);
    CHECK(kr.comparable);
    CHECK(kr.dim_ker_pi == 1);
    CHECK(kr.measured <= kr.bound + 1e-8);
  }
  EquivariantComplex XZ = presentation_complex(presentation_Z());
  Representation circ = circle_discretization(8);
  Representation flat = circle_mode_flatten(circ, 1);
  KernelClosenessReport kr = kernel_closeness_bound(XZ, circ, flat, 0);
  CHECK_FALSE(kr.comparable);  // the flattened mode creates a new kernel vector
  CHECK(kr.dim_ker_pi == 0);
  CHECK(kr.dim_ker_rho == 1);
  CHECK(kr.bound == doctest::Approx(1.0).epsilon(1e-12));  // drift / kappa_0 = 1 exactly here
}

TEST_CASE("deformation chain: injective route on the circle character") {
  EquivariantComplex X = presentation_complex(presentation_Z());
  Representation pi = char_rep({0.5});  // kappa_0 = 2, ker d^0 = 0
  ChainEvaluation ce = deformation_chain(X, pi, 0, 0.5);
  CHECK(ce.injective_case);
  CHECK(ce.certified);
  CHECK(ce.drift_bound == 0.0);
  CHECK(ce.lower_bound == doctest::Approx(1.5).epsilon(1e-12));
  CHECK_FALSE(deformation_chain(X, pi, 0, 2.5).certified);
  // H^0(trivial) = 1: nothing to certify
  CHECK_THROWS_AS(deformation_chain(X, char_rep({0.0}), 0, 0.1), VerificationError);
}

TEST_CASE("deformation chain: transfer route on the torus sign character") {
  EquivariantComplex X = presentation_complex(presentation_Z2());
  Representation pi = char_rep({0.5, 0.5});
  ChainEvaluation small = deformation_chain(X, pi, 1, 0.01);
  CHECK(small.certified);
  CHECK_FALSE(small.injective_case);
  CHECK(small.eta > 0.0);
  CHECK(small.eta < 1.0);
  CHECK(small.lower_bound > 0.0);
  CHECK(small.lower_bound <= 2.0 * std::sqrt(2.0) + 1e-12);
  CHECK(small.drift_bound == doctest::Approx(2.0 * std::sqrt(2.0) - small.lower_bound));
  ChainEvaluation mid = deformation_chain(X, pi, 1, 0.1);
  CHECK(mid.lower_bound < small.lower_bound);  // the certificate degrades with eps
  CHECK(deformation_chain(X, pi, 1, 1.0).certified == false);
}

TEST_CASE("sufficient epsilon lands on the frozen grid points") {
  EquivariantComplex XZ = presentation_complex(presentation_Z());
  SufficientEpsilon inj = sufficient_epsilon(XZ, char_rep({0.5}), 0);
  REQUIRE(inj.found);
  CHECK(inj.epsilon_star == doctest::Approx(grid_point(54)).epsilon(1e-13));
  CHECK(inj.at_star.injective_case);
  CHECK(grid_point(55) > 2.0);  // the next grid point exceeds kappa_0

  EquivariantComplex X2 = presentation_complex(presentation_Z2());
  Representation sign = char_rep({0.5, 0.5});
  SufficientEpsilon se = sufficient_epsilon(X2, sign, 1);
  REQUIRE(se.found);
  CHECK(se.epsilon_star == doctest::Approx(0.14773776525985108).epsilon(1e-13));
  CHECK(se.epsilon_star == doctest::Approx(grid_point(47)).epsilon(1e-13));
  CHECK(se.at_star.certified);
  CHECK_FALSE(deformation_chain(X2, sign, 1, grid_point(48)).certified);

  // kappa_0 below the grid floor: the hypothesis check reports a diagnostic
  SufficientEpsilon none = sufficient_epsilon(XZ, char_rep({1e-9}), 0);
  CHECK_FALSE(none.found);
  CHECK_FALSE(none.diagnostic.empty());
  CHECK_THROWS_AS(sufficient_epsilon(XZ, char_rep({0.0}), 0), VerificationError);
}

TEST_CASE("laplacian criterion: frozen examples and the unitary guard") {
  EquivariantComplex XZ = presentation_complex(presentation_Z());
  LaplacianCriterion pos = laplacian_criterion(XZ, char_rep({0.5}), 0);
  CHECK(pos.vanishes);
  CHECK(pos.lambda_min == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(pos.tau_gap == doctest::Approx(4e-9).epsilon(1e-6));
  LaplacianCriterion triv = laplacian_criterion(XZ, char_rep({0.0}), 0);
  CHECK_FALSE(triv.vanishes);
  CHECK(triv.lambda_min < 1e-14);
  // explicit threshold overrides the default
  CHECK_FALSE(laplacian_criterion(XZ, char_rep({0.5}), 0, 10.0).vanishes);

  EquivariantComplex X3 = presentation_complex(presentation_Z3());
  Representation omega = char_rep({1.0 / 3.0});
  CHECK(laplacian_criterion(X3, omega, 0).vanishes);
  CHECK(laplacian_criterion(X3, omega, 1).vanishes);
  CHECK(laplacian_criterion(X3, omega, 1).lambda_min == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_FALSE(laplacian_criterion(X3, omega, 2).vanishes);  // Delta^2 = 0: H^2 survives

  Matrix two(1, 1);
  two(0, 0) = 2.0;
  CHECK_THROWS_AS(laplacian_criterion(XZ, make_representation({two}), 0), VerificationError);
}

TEST_CASE("duality: bounded-below on ker d^n iff H^n vanishes, bound equals kappa") {
  EquivariantComplex XZ = presentation_complex(presentation_Z());
  DualityCheck d1 = duality_check(XZ, char_rep({0.5}), 1);
  CHECK(d1.dim_H == 0);
  CHECK(d1.bounded_below);
  CHECK(d1.lower_bound == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d1.matches_kappa);
  DualityCheck d0 = duality_check(XZ, char_rep({0.0}), 0);
  CHECK(d0.dim_H == 1);
  CHECK_FALSE(d0.bounded_below);
  CHECK(d0.lower_bound == 0.0);

  EquivariantComplex X2 = presentation_complex(presentation_Z2());
  DualityCheck torus = duality_check(X2, char_rep({0.0, 0.0}), 1);
  CHECK(torus.dim_H == 2);
  CHECK_FALSE(torus.bounded_below);

  EquivariantComplex X3 = presentation_complex(presentation_Z3());
  Representation omega = char_rep({1.0 / 3.0});
  DualityCheck z3 = duality_check(X3, omega, 1);
  CHECK(z3.dim_H == 0);
  CHECK(z3.bounded_below);
  CHECK(z3.lower_bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(z3.matches_kappa);
  DualityCheck top = duality_check(X3, omega, 2);
  CHECK(top.dim_H == 1);
  CHECK_FALSE(top.bounded_below);
  // empty kernel: trivially bounded below
  DualityCheck inj = duality_check(XZ, char_rep({0.25}), 0);
  CHECK(inj.dim_H == 0);
  CHECK(inj.bounded_below);
  CHECK(std::isinf(inj.lower_bound));
}

TEST_CASE("weil rigidity certificates") {
  WeilCertificate rigid = weil_rigidity_check(presentation_Z3(), char_rep({1.0 / 3.0}));
  CHECK(rigid.rigid);
  CHECK(rigid.ad_dim == 1);
  CHECK(rigid.dim_H1 == 0);
  CHECK(std::isinf(rigid.kappa_0));  // Ad of a character is trivial
  CHECK(rigid.kappa_1 == doctest::Approx(3.0).epsilon(1e-12));

  Matrix rot(2, 2);
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  WeilCertificate free_circle =
      weil_rigidity_check(presentation_Z(), make_representation({rot}, "rot"));
  CHECK_FALSE(free_circle.rigid);
  CHECK(free_circle.ad_dim == 4);
  CHECK(free_circle.dim_H1 == 2);

  WeilCertificate trivial = weil_rigidity_check(presentation_Z(), char_rep({0.0}));
  CHECK_FALSE(trivial.rigid);
  CHECK(trivial.dim_H1 == 1);

  // a representation that breaks the relators is rejected before any cohomology
  CHECK_THROWS_AS(weil_rigidity_check(presentation_Z3(), char_rep({0.5})), VerificationError);
}

TEST_SUITE_END();
