#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cohomolab/analysis.hpp"
#include "cohomolab/presentation.hpp"
#include "cohomolab/representation.hpp"

namespace cohomolab {

// ---------------------------------------------------------------------------
// Experiment configuration (CLI flags and key=value config files map 1:1)

struct ExperimentConfig {
  std::string preset;        // presentation preset name ("Z", "F2", "Z2", "Z3")
  std::string complex_file;  // complex file path (overrides the preset complex)
  std::string rep_spec;      // builder string or representation file path
  int degree = 0;
  std::vector<double> eps_grid;  // non-negative, strictly increasing
  int trials = 1;
  std::uint64_t seed = 0;
  DeformationKind strategy = DeformationKind::conjugation;
  double rank_tol = 0.0;  // 0 = automatic threshold
  std::string out_dir;
  int jobs = 1;
  std::vector<int> scaling_N;  // scaling study sizes (each >= 3)
  std::string only;            // verify: run just this check
};

// Resolved inputs: presentation (when known), complex, base representation.
struct Workspace {
  bool has_presentation = false;
  GroupPresentation P;
  EquivariantComplex X;
  Representation pi;
};

// Builders: "trivial:d", "char:p/q[,p/q...]", "circle:N", "rotation:theta[,...]",
// "haar:d" (needs a presentation and uses `seed`); anything else is read as a
// representation file path. char/rotation lists broadcast a single entry.
Representation build_rep(const std::string& spec, int generator_count,
                         const GroupPresentation* P, std::uint64_t seed);

// Resolves preset/complex/rep and verifies the representation against the
// presentation when one is available.
Workspace resolve_workspace(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Sweep engine

struct SweepCell {
  std::uint64_t seed = 0;
  double epsilon_requested = 0.0;
  double epsilon_measured = 0.0;
  double drift = 0.0;
  double drift_bound = 0.0;
  int dimH_before = 0;
  int dimH_after = 0;
  double kappa_before = 0.0;  // at degree max(n-1, 0)
  double kappa_after = 0.0;
  double closeness = 0.0;        // measured closeness(ker d^n_rho, ker d^n_pi)
  double closeness_bound = 0.0;  // drift / kappa_n(pi)
  int vanishing_preserved = 0;   // dim H^n stayed zero
};

struct SweepResult {
  std::vector<SweepCell> cells;  // ordered by (seed, epsilon)
  std::string csv;               // rows + '#' summary trailer, LF endings
};

// One deformation per (seed, epsilon) cell; cells evaluated by a worker pool
// of cfg.jobs threads and emitted in deterministic order.
SweepResult run_sweep(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Scaling study over circle discretizations

struct ScalingRow {
  int N = 0;
  double kappa0 = 0.0;
  double closed_form = 0.0;  // 2 sin(pi/N)
  double sufficient_eps = 0.0;
  double flatten_distance = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  std::string csv;
};

// Checks kappa0 against the closed form within 1e-10 (VerificationError
// otherwise).
ScalingResult run_scaling(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Invariant suite

struct VerifyCheck {
  std::string name;  // ddzero | closeness | duality | laplacian | euler
  bool ok = false;
  std::vector<std::string> failures;
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;
  bool all_ok = false;
};

// Runs the invariant suite over the bundled fixtures x seeded random unitary
// representations (dims 1-4). cfg.only filters to a single check name.
VerifyResult run_verify(const ExperimentConfig& cfg);

// Worker count default: COHOMOLAB_JOBS when set, else 1.
int default_jobs();

}  // namespace cohomolab
