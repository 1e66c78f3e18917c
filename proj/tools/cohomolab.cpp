#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cohomolab/errors.hpp"
#include "cohomolab/report_json.hpp"
#include "cohomolab/sweep.hpp"
#include "cohomolab/text_format.hpp"

namespace {

using namespace cohomolab;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

std::string output_path(const ExperimentConfig& cfg, const std::string& filename) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / filename).string();
}

void print_cohomology_table(const CohomologyReport& r) {
  std::cout << "complex " << r.complex_name << "  rep " << r.rep_label << "  dim E " << r.dim_E
            << "  unitary " << (r.unitary ? "yes" : "no") << "\n";
  std::cout << "chi " << r.euler_characteristic << "  rank_tol "
            << (r.rank_tol > 0.0 ? format_real(r.rank_tol) : std::string("auto"))
            << "  euler audit " << (r.euler_audit_ok ? "ok" : "FAIL") << "\n";
  std::cout << std::setw(3) << "n" << std::setw(8) << "dim_C" << std::setw(8) << "rank"
            << std::setw(8) << "dim_ker" << std::setw(8) << "dim_H" << std::setw(24) << "kappa"
            << std::setw(24) << "lambda_min" << "\n";
  for (const auto& d : r.degrees) {
    std::cout << std::setw(3) << d.n << std::setw(8) << d.dim_C << std::setw(8) << d.rank
              << std::setw(8) << d.dim_ker << std::setw(8) << d.dim_H << std::setw(24)
              << format_real(d.kappa) << std::setw(24)
              << (r.unitary ? format_real(d.laplacian_lambda_min) : std::string("-")) << "\n";
  }
}

int cmd_cohomology(const ExperimentConfig& cfg) {
  Workspace ws = resolve_workspace(cfg);
  CohomologyReport report = cohomology(ws.X, ws.pi, RankOptions{cfg.rank_tol});
  print_cohomology_table(report);
  if (!cfg.out_dir.empty())
    write_file(output_path(cfg, "cohomology.json"), to_json(report).dump(2) + "\n");
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  SweepResult result = run_sweep(cfg);
  if (cfg.out_dir.empty())
    std::cout << result.csv;
  else
    write_file(output_path(cfg, "sweep.csv"), result.csv);
  return 0;
}

int cmd_scaling(const ExperimentConfig& cfg) {
  ScalingResult result = run_scaling(cfg);
  if (cfg.out_dir.empty())
    std::cout << result.csv;
  else
    write_file(output_path(cfg, "scaling.csv"), result.csv);
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
  VerifyResult result = run_verify(cfg);
  for (const auto& check : result.checks) {
    if (check.ok) {
      std::cout << "PASS " << check.name << "\n";
    } else {
      std::cout << "FAIL " << check.name << " (" << check.failures.size() << " failures)\n";
      size_t shown = 0;
      for (const auto& f : check.failures) {
        if (shown++ == 5) {
          std::cout << "  ...\n";
          break;
        }
        std::cout << "  " << f << "\n";
      }
    }
  }
  return result.all_ok ? 0 : 1;
}

int cmd_weil(const ExperimentConfig& cfg) {
  if (cfg.preset.empty()) throw ParseError("weil needs --preset");
  if (cfg.rep_spec.empty()) throw ParseError("weil needs --rep");
  GroupPresentation P = preset_presentation(cfg.preset);
  Representation phi = build_rep(cfg.rep_spec, P.generator_count, &P, cfg.seed);
  WeilCertificate cert = weil_rigidity_check(P, phi, RankOptions{cfg.rank_tol});
  std::cout << "adjoint dim " << cert.ad_dim << "\n";
  std::cout << "dim H^1(Ad) = " << cert.dim_H1 << "\n";
  std::cout << "kappa_0 " << format_real(cert.kappa_0) << "  kappa_1 " << format_real(cert.kappa_1)
            << "\n";
  std::cout << (cert.rigid ? "certificate: rigid" : "certificate: not certified") << "\n";
  if (!cfg.out_dir.empty())
    write_file(output_path(cfg, "weil.json"), to_json(cert).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohomology laboratory for finitely presented groups"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file (flags win)");

  ExperimentConfig cfg;
  cfg.jobs = default_jobs();
  std::string strategy_name = "conjugation";

  app.add_option("--preset", cfg.preset, "presentation preset: Z, F2, Z2, Z3");
  app.add_option("--complex", cfg.complex_file, "complex file path");
  app.add_option("--rep", cfg.rep_spec,
                 "representation: trivial:d | char:p/q[,..] | circle:N | rotation:theta[,..] | "
                 "haar:d | file path");
  app.add_option("--degree", cfg.degree, "cochain degree n");
  app.add_option("--eps", cfg.eps_grid, "deformation size grid")->delimiter(',');
  app.add_option("--trials", cfg.trials, "deformations per eps");
  app.add_option("--seed", cfg.seed, "base RNG seed");
  app.add_option("--rank-tol", cfg.rank_tol, "absolute singular-value cutoff (0 = auto)");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--jobs", cfg.jobs, "worker threads (env COHOMOLAB_JOBS)");
  app.add_option("--strategy", strategy_name,
                 "deformation kind: conjugation | diagonal | derivation | flatten | free");
  app.add_option("--N", cfg.scaling_N, "scaling sizes")->delimiter(',');
  app.add_option("--only", cfg.only, "verify: run a single check");

  CLI::App* sub_cohomology = app.add_subcommand("cohomology", "dimensions, kappas, audit table");
  CLI::App* sub_sweep = app.add_subcommand("sweep", "deformation sweep CSV");
  CLI::App* sub_scaling = app.add_subcommand("scaling", "circle discretization scaling CSV");
  CLI::App* sub_verify = app.add_subcommand("verify", "run the invariant suite");
  CLI::App* sub_weil = app.add_subcommand("weil", "local rigidity certificate");
  for (CLI::App* sub : {sub_cohomology, sub_sweep, sub_scaling, sub_verify, sub_weil})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.strategy = parse_deformation_kind(strategy_name);
    if (sub_cohomology->parsed()) return cmd_cohomology(cfg);
    if (sub_sweep->parsed()) return cmd_sweep(cfg);
    if (sub_scaling->parsed()) return cmd_scaling(cfg);
    if (sub_verify->parsed()) return cmd_verify(cfg);
    if (sub_weil->parsed()) return cmd_weil(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
