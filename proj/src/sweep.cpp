#include "cohomolab/sweep.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "cohomolab/cochain.hpp"
#include "cohomolab/errors.hpp"
#include "cohomolab/linalg.hpp"
#include "cohomolab/text_format.hpp"

namespace cohomolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(trim(text.substr(start)));
      break;
    }
    out.emplace_back(trim(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

// "p/q" as a fraction, otherwise a plain real.
double parse_fraction(std::string_view text) {
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) return parse_real(text);
  double num = parse_real(text.substr(0, slash));
  double den = parse_real(text.substr(slash + 1));
  if (den == 0.0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::vector<double> broadcast_values(const std::string& list, int generator_count,
                                     const std::string& what) {
  std::vector<std::string> pieces = split_list(list);
  std::vector<double> values;
  for (const auto& p : pieces) values.push_back(parse_fraction(p));
  if (static_cast<int>(values.size()) == 1) values.assign(generator_count, values[0]);
  if (static_cast<int>(values.size()) != generator_count)
    throw ParseError(what + " needs 1 or " + std::to_string(generator_count) + " values, got " +
                     std::to_string(values.size()));
  return values;
}

}  // namespace

Representation build_rep(const std::string& spec, int generator_count,
                         const GroupPresentation* P, std::uint64_t seed) {
  size_t colon = spec.find(':');
  std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::string tail = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  if (head == "trivial") {
    int d = static_cast<int>(parse_real(tail));
    if (d < 1) throw ParseError("trivial:d needs d >= 1");
    std::vector<Matrix> images(generator_count, Matrix::Identity(d, d));
    return make_representation(std::move(images), spec);
  }
  if (head == "char") {
    std::vector<double> turns = broadcast_values(tail, generator_count, "char");
    std::vector<Matrix> images;
    for (double t : turns) {
      Matrix m(1, 1);
      m(0, 0) = std::polar(1.0, 2.0 * M_PI * t);
      images.push_back(m);
    }
    return make_representation(std::move(images), spec);
  }
  if (head == "circle") {
    if (generator_count != 1)
      throw ParseError("circle:N is a single-generator representation");
    int N = static_cast<int>(parse_real(tail));
    return circle_discretization(N);
  }
  if (head == "rotation") {
    std::vector<double> angles = broadcast_values(tail, generator_count, "rotation");
    std::vector<Matrix> images;
    for (double theta : angles) {
      Matrix m(2, 2);
      m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
      images.push_back(m);
    }
    return make_representation(std::move(images), spec);
  }
  if (head == "haar") {
    if (P == nullptr) throw ParseError("haar:d needs a presentation (use --preset)");
    int d = static_cast<int>(parse_real(tail));
    return random_unitary_rep(*P, d, seed);
  }
  Representation pi = read_representation_file(spec);
  if (pi.generator_count() < generator_count)
    throw ParseError("representation file '" + spec + "' has " +
                     std::to_string(pi.generator_count()) + " generators, need " +
                     std::to_string(generator_count));
  return pi;
}

Workspace resolve_workspace(const ExperimentConfig& cfg) {
  Workspace ws;
  if (!cfg.preset.empty()) {
    ws.P = preset_presentation(cfg.preset);
    ws.has_presentation = true;
  }
  if (!cfg.complex_file.empty()) {
    ws.X = read_complex_file(cfg.complex_file);
  } else if (ws.has_presentation) {
    ws.X = presentation_complex(ws.P);
  } else {
    throw ParseError("need --preset or --complex");
  }
  if (cfg.rep_spec.empty()) throw ParseError("need --rep");
  ws.pi = build_rep(cfg.rep_spec, ws.X.generator_count,
                    ws.has_presentation ? &ws.P : nullptr, cfg.seed);
  if (ws.has_presentation) verify_representation(ws.pi, ws.P);
  return ws;
}

// ---------------------------------------------------------------------------
// Sweep

SweepResult run_sweep(const ExperimentConfig& cfg) {
  Workspace ws = resolve_workspace(cfg);
  if (!ws.has_presentation) throw ParseError("sweep needs --preset for relator checks");
  const int n = cfg.degree;
  if (n < 0 || n > ws.X.max_degree) throw ParseError("degree out of range for this complex");
  if (cfg.trials < 1) throw ParseError("trials must be >= 1");
  if (cfg.eps_grid.empty()) throw ParseError("empty eps grid");
  for (size_t i = 0; i < cfg.eps_grid.size(); ++i) {
    if (cfg.eps_grid[i] < 0.0) throw ParseError("eps must be non-negative");
    if (i > 0 && cfg.eps_grid[i] <= cfg.eps_grid[i - 1])
      throw ParseError("eps grid must be strictly increasing");
  }

  const RankOptions base_opt{cfg.rank_tol};
  const RankOptions opt = with_complex_scale(ws.X, ws.pi, base_opt);
  const Matrix Dn_pi = codifferential(ws.X, ws.pi, n);
  const SvdAnalysis sn_pi = svd_analyze(Dn_pi, opt);
  const int kdeg = n > 0 ? n - 1 : 0;
  const SvdAnalysis skd_pi = svd_analyze(codifferential(ws.X, ws.pi, kdeg), opt);
  const int rank_prev_pi = n > 0 ? skd_pi.rank : 0;
  const int dimH_before = (static_cast<int>(Dn_pi.cols()) - sn_pi.rank) - rank_prev_pi;
  const double kappa_n_pi = sn_pi.rank == 0 ? kInf : sn_pi.gap;
  const double kappa_before = skd_pi.rank == 0 ? kInf : skd_pi.gap;
  const SubspaceBasis ker_pi{kernel_basis(sn_pi)};

  struct CellJob {
    std::uint64_t seed;
    double eps;
  };
  std::vector<CellJob> jobs_list;
  for (int t = 0; t < cfg.trials; ++t)
    for (double e : cfg.eps_grid) jobs_list.push_back({cfg.seed + static_cast<std::uint64_t>(t), e});

  SweepResult result;
  result.cells.resize(jobs_list.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs_list.size()) return;
      try {
        const CellJob& job = jobs_list[i];
        SweepCell cell;
        cell.seed = job.seed;
        cell.epsilon_requested = job.eps;
        Representation rho =
            random_deformation(ws.pi, ws.P, DeformationSpec{cfg.strategy, job.eps, job.seed});
        cell.epsilon_measured = deformation_distance(ws.pi, rho);
        Matrix Dn_rho = codifferential(ws.X, rho, n);
        cell.drift = spectral_norm(Dn_pi - Dn_rho);
        cell.drift_bound = deformation_bound(ws.X, ws.pi, job.eps, n);
        const RankOptions opt_rho = with_complex_scale(ws.X, rho, base_opt);
        SvdAnalysis sn_rho = svd_analyze(Dn_rho, opt_rho);
        int rank_prev_rho = 0;
        double kappa_after = sn_rho.rank == 0 ? kInf : sn_rho.gap;  // kdeg == n when n == 0
        if (n > 0) {
          SvdAnalysis sp_rho = svd_analyze(codifferential(ws.X, rho, n - 1), opt_rho);
          rank_prev_rho = sp_rho.rank;
          kappa_after = sp_rho.rank == 0 ? kInf : sp_rho.gap;
        }
        cell.dimH_before = dimH_before;
        cell.dimH_after = (static_cast<int>(Dn_rho.cols()) - sn_rho.rank) - rank_prev_rho;
        cell.kappa_before = kappa_before;
        cell.kappa_after = kappa_after;
        cell.closeness = closeness(SubspaceBasis{kernel_basis(sn_rho)}, ker_pi);
        cell.closeness_bound = std::isinf(kappa_n_pi) ? 0.0 : cell.drift / kappa_n_pi;
        cell.vanishing_preserved = (dimH_before == 0 && cell.dimH_after == 0) ? 1 : 0;
        result.cells[i] = cell;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(jobs_list.size());
        return;
      }
    }
  };

  const int thread_count = std::max(1, cfg.jobs);
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::ostringstream csv;
  csv << "seed,epsilon_requested,epsilon_measured,drift,drift_bound,dimH_before,dimH_after,"
         "kappa_before,kappa_after,closeness,closeness_bound,vanishing_preserved\n";
  for (const auto& c : result.cells) {
    csv << c.seed << ',' << format_real(c.epsilon_requested) << ','
        << format_real(c.epsilon_measured) << ',' << format_real(c.drift) << ','
        << format_real(c.drift_bound) << ',' << c.dimH_before << ',' << c.dimH_after << ','
        << format_real(c.kappa_before) << ',' << format_real(c.kappa_after) << ','
        << format_real(c.closeness) << ',' << format_real(c.closeness_bound) << ','
        << c.vanishing_preserved << '\n';
  }
  for (size_t e = 0; e < cfg.eps_grid.size(); ++e) {
    int preserved = 0;
    for (int t = 0; t < cfg.trials; ++t)
      preserved += result.cells[t * cfg.eps_grid.size() + e].vanishing_preserved;
    csv << "# eps " << format_real(cfg.eps_grid[e]) << " preserved " << preserved << "/"
        << cfg.trials << " fraction "
        << format_real(static_cast<double>(preserved) / cfg.trials) << '\n';
  }
  try {
    SufficientEpsilon se = sufficient_epsilon(ws.X, ws.pi, n, opt);
    if (se.found)
      csv << "# sufficient_epsilon " << format_real(se.epsilon_star) << '\n';
    else
      csv << "# sufficient_epsilon none\n";
  } catch (const VerificationError&) {
    csv << "# sufficient_epsilon n/a\n";  // dim H^n(pi) != 0: nothing to certify
  }
  result.csv = csv.str();
  return result;
}

// ---------------------------------------------------------------------------
// Scaling

ScalingResult run_scaling(const ExperimentConfig& cfg) {
  if (cfg.scaling_N.empty()) throw ParseError("scaling needs --N with at least one size");
  RankOptions opt{cfg.rank_tol};
  GroupPresentation P = presentation_Z();
  EquivariantComplex X = presentation_complex(P);

  ScalingResult result;
  std::ostringstream csv;
  csv << "N,kappa0,closed_form,sufficient_epsilon,flatten_distance\n";
  for (int N : cfg.scaling_N) {
    if (N < 3) throw ParseError("scaling sizes must be >= 3");
    ScalingRow row;
    row.N = N;
    Representation pi = circle_discretization(N);
    row.kappa0 = kazhdan_constant(X, pi, 0, opt);
    row.closed_form = 2.0 * std::sin(M_PI / N);
    if (std::abs(row.kappa0 - row.closed_form) > 1e-10)
      throw VerificationError("kappa_0(circle:" + std::to_string(N) +
                              ") does not match 2 sin(pi/N)");
    SufficientEpsilon se = sufficient_epsilon(X, pi, 0, opt);
    row.sufficient_eps = se.found ? se.epsilon_star : 0.0;
    Representation flat = circle_mode_flatten(pi, 1);
    row.flatten_distance = deformation_distance(pi, flat);
    result.rows.push_back(row);
    csv << row.N << ',' << format_real(row.kappa0) << ',' << format_real(row.closed_form) << ','
        << format_real(row.sufficient_eps) << ',' << format_real(row.flatten_distance) << '\n';
  }
  result.csv = csv.str();
  return result;
}

// ---------------------------------------------------------------------------
// Invariant suite

namespace {

struct Fixture {
  GroupPresentation P;
  EquivariantComplex X;
  std::vector<Representation> reps;  // 20 seeded random unitary reps, dims 1-4
};

std::vector<Fixture> make_fixtures(std::uint64_t seed) {
  std::vector<GroupPresentation> presets = {presentation_Z(), presentation_F2(),
                                            presentation_Z2(), presentation_Z3()};
  std::vector<Fixture> fixtures;
  std::uint64_t fixture_index = 0;
  for (auto& P : presets) {
    Fixture f;
    f.X = presentation_complex(P);
    for (int dim = 1; dim <= 4; ++dim)
      for (int i = 0; i < 5; ++i)
        f.reps.push_back(
            random_unitary_rep(P, dim, seed + fixture_index * 1000 + dim * 10 + i));
    f.P = std::move(P);
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::string cell_tag(const Fixture& f, const Representation& pi, int n) {
  return f.P.name + " " + pi.label + " n=" + std::to_string(n);
}

void check_ddzero(const std::vector<Fixture>& fixtures, const RankOptions&, VerifyCheck& out) {
  for (const auto& f : fixtures)
    for (const auto& pi : f.reps)
      for (int n = 0; n + 1 <= f.X.max_degree; ++n) {
        Matrix hi = codifferential(f.X, pi, n + 1);
        Matrix lo = codifferential(f.X, pi, n);
        double defect = spectral_norm(hi * lo);
        double tol = 1e-10 * (1.0 + spectral_norm(hi) * spectral_norm(lo));
        if (defect > tol)
          out.failures.push_back(cell_tag(f, pi, n) + ": ||d d|| = " + format_real(defect));
      }
}

void check_closeness_suite(std::uint64_t seed, VerifyCheck& out) {
  std::mt19937_64 rng(seed + 777);
  for (int i = 0; i < 50; ++i) {
    int ambient = 4 + static_cast<int>(rng() % 9);  // 4..12
    int kw = 1 + static_cast<int>(rng() % (ambient - 1));
    int kv = 1 + static_cast<int>(rng() % kw);
    SubspaceBasis W = subspace_from_columns(random_gaussian(ambient, kw, rng));
    Matrix tilt = W.Q.leftCols(kv) + 0.05 * random_gaussian(ambient, kv, rng);
    SubspaceBasis V = subspace_from_columns(tilt);
    ClosenessChecks cc = closeness_lemma_checks(V, W);
    if (!cc.ok)
      out.failures.push_back("subspace pair " + std::to_string(i) +
                             ": closeness lemma slack negative");

    int cols = std::max(2, ambient - 2);
    Matrix T = random_gaussian(ambient, cols, rng);
    Matrix E = random_gaussian(ambient, cols, rng);
    Matrix S = T + (0.01 / spectral_norm(E)) * E;
    int vdim = 1 + static_cast<int>(rng() % 2);
    SubspaceBasis Vop = subspace_from_columns(random_gaussian(cols, vdim, rng));
    SubspaceBasis Wop =
        subspace_from_columns(Vop.Q + 0.1 * random_gaussian(cols, vdim, rng));
    PerturbationChecks pc = bounded_below_perturbation_check(T, S, Vop, &Wop);
    if (!pc.ok)
      out.failures.push_back("operator pair " + std::to_string(i) +
                             ": perturbation lemma slack negative");

    Matrix Tq = T - (T * Vop.Q) * Vop.Q.adjoint();  // vanish on V
    Matrix Sq = S - (S * Wop.Q) * Wop.Q.adjoint();  // vanish on W
    QuotientComparisonCheck qc = quotient_comparison_check(Tq, Sq, Vop, Wop);
    if (!qc.ok)
      out.failures.push_back("quotient pair " + std::to_string(i) + ": slack " +
                             format_real(qc.slack));
  }
}

void check_duality(const std::vector<Fixture>& fixtures, const RankOptions& opt,
                   VerifyCheck& out) {
  for (const auto& f : fixtures)
    for (const auto& pi : f.reps)
      for (int n = 0; n <= f.X.max_degree; ++n) {
        DualityCheck dc = duality_check(f.X, pi, n, opt);
        if (dc.bounded_below != (dc.dim_H == 0))
          out.failures.push_back(cell_tag(f, pi, n) + ": bounded-below vs dim H mismatch");
        if (n >= 1 && dc.dim_H == 0 && !dc.matches_kappa)
          out.failures.push_back(cell_tag(f, pi, n) + ": lower bound != kappa_{n-1}");
      }
}

void check_laplacian(const std::vector<Fixture>& fixtures, const RankOptions& opt,
                     VerifyCheck& out) {
  for (const auto& f : fixtures)
    for (const auto& pi : f.reps) {
      CohomologyReport report = cohomology(f.X, pi, opt);
      for (int n = 0; n <= f.X.max_degree; ++n) {
        LaplacianCriterion crit = laplacian_criterion(f.X, pi, n);
        if (crit.vanishes != (report.degrees[n].dim_H == 0))
          out.failures.push_back(cell_tag(f, pi, n) + ": criterion disagrees with dim H");
      }
    }
}

// Rank-route dims must satisfy the alternating-sum audit AND agree with the
// harmonic (Laplacian kernel) dimensions, which do not depend on the rank
// threshold. A misconfigured threshold shows up here.
void check_euler(const std::vector<Fixture>& fixtures, const RankOptions& opt,
                 VerifyCheck& out) {
  for (const auto& f : fixtures)
    for (const auto& pi : f.reps) {
      CohomologyReport report = cohomology(f.X, pi, opt);
      if (!report.euler_audit_ok)
        out.failures.push_back(f.P.name + " " + pi.label + ": alternating sum != dim E * chi");
      for (int n = 0; n <= f.X.max_degree; ++n) {
        Matrix delta = laplacian(f.X, pi, n);
        Eigen::SelfAdjointEigenSolver<Matrix> es(delta, Eigen::EigenvaluesOnly);
        double lambda_max = delta.rows() == 0 ? 0.0 : es.eigenvalues()(delta.rows() - 1);
        double harmonic_tol = 1e-7 * std::max(1.0, lambda_max);
        int harmonic = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
          if (es.eigenvalues()(i) <= harmonic_tol) ++harmonic;
        if (harmonic != report.degrees[n].dim_H)
          out.failures.push_back(cell_tag(f, pi, n) + ": rank-route dim H = " +
                                 std::to_string(report.degrees[n].dim_H) + ", harmonic dim = " +
                                 std::to_string(harmonic));
      }
    }
}

}  // namespace

VerifyResult run_verify(const ExperimentConfig& cfg) {
  static const std::vector<std::string> kAll = {"ddzero", "closeness", "duality", "laplacian",
                                                "euler"};
  std::vector<std::string> selected;
  if (cfg.only.empty()) {
    selected = kAll;
  } else {
    if (std::find(kAll.begin(), kAll.end(), cfg.only) == kAll.end())
      throw ParseError("unknown check '" + cfg.only + "'");
    selected = {cfg.only};
  }

  RankOptions opt{cfg.rank_tol};
  std::vector<Fixture> fixtures = make_fixtures(cfg.seed);

  VerifyResult result;
  result.all_ok = true;
  for (const auto& name : selected) {
    VerifyCheck check;
    check.name = name;
    if (name == "ddzero") check_ddzero(fixtures, opt, check);
    else if (name == "closeness") check_closeness_suite(cfg.seed, check);
    else if (name == "duality") check_duality(fixtures, opt, check);
    else if (name == "laplacian") check_laplacian(fixtures, opt, check);
    else if (name == "euler") check_euler(fixtures, opt, check);
    check.ok = check.failures.empty();
    result.all_ok = result.all_ok && check.ok;
    result.checks.push_back(std::move(check));
  }
  return result;
}

int default_jobs() {
  const char* env = std::getenv("COHOMOLAB_JOBS");
  if (env == nullptr) return 1;
  int jobs = std::atoi(env);
  return jobs >= 1 ? jobs : 1;
}

}  // namespace cohomolab
