// Command-line front end: certify schemes, run 1D Allen-Cahn
// simulations, re-check recorded traces and run step-size studies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbprk/mbprk.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_mbp_only = 2;
constexpr int exit_not_mbp = 3;
constexpr int exit_usage = 64;
constexpr int exit_data = 65;
constexpr int exit_violation = 70;

struct CertifyArgs {
  std::string scheme;
  std::optional<double> epsilon;
  std::optional<int> grid_n;
  std::string bound_mode = "safe";
};

struct SimulateArgs {
  std::string scheme;
  double epsilon = 0.1;
  int grid_n = 128;
  double t_final = 1.0;
  std::string tau = "auto-mbp";
  std::string ic = "random:42";
  std::string out;
  std::string bound_mode = "safe";
};

struct CheckArgs {
  std::string trace_file;
};

struct StudyArgs {
  std::string scheme;
  double epsilon = 0.25;
  int grid_n = 64;
  double t_final = 1.0;
  std::vector<double> taus;
  std::string ic = "cosine:1";
};

mbprk::Tau0Mode parse_bound_mode(const std::string& text) {
  if (text == "safe") return mbprk::Tau0Mode::safe;
  if (text == "paper") return mbprk::Tau0Mode::paper;
  throw mbprk::ConfigError("bound mode must be 'safe' or 'paper', got '" +
                           text + "'");
}

mbprk::ButcherTableau resolve_and_validate(const std::string& arg) {
  std::string warning;
  mbprk::ButcherTableau t = mbprk::resolve_scheme(arg, &warning);
  if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
  const auto violations = mbprk::validate_tableau(t);
  if (!violations.empty()) {
    for (const auto& v : violations)
      std::cerr << "tableau violation: " << v.message << "\n";
    throw mbprk::ParseError("tableau '" + arg + "' is inconsistent");
  }
  return t;
}

int run_certify(const CertifyArgs& args) {
  mbprk::ButcherTableau t = resolve_and_validate(args.scheme);
  mbprk::StabilityCertificate cert = mbprk::certify(t);

  std::optional<mbprk::StepBounds> bounds;
  if (args.epsilon && args.grid_n) {
    const mbprk::Grid grid = mbprk::make_grid(*args.grid_n);
    bounds = mbprk::step_bounds(cert, *args.epsilon, grid.h,
                                parse_bound_mode(args.bound_mode));
  } else if (args.epsilon || args.grid_n) {
    throw mbprk::ConfigError(
        "--epsilon and --grid-n must be given together to compute bounds");
  }

  std::cout << mbprk::certificate_report(cert, bounds).dump(2) << "\n";
  if (!cert.mbp) return exit_not_mbp;
  return cert.energy_dissipative ? exit_ok : exit_mbp_only;
}

int run_simulate(const SimulateArgs& args) {
  mbprk::SimulationConfig cfg;
  cfg.scheme = resolve_and_validate(args.scheme);
  cfg.epsilon = args.epsilon;
  cfg.n = args.grid_n;
  cfg.t_final = args.t_final;
  cfg.tau = mbprk::TauSpec::parse(args.tau);
  cfg.ic = args.ic;
  cfg.bound_mode = parse_bound_mode(args.bound_mode);

  const mbprk::SimulationTrace trace = mbprk::simulate(cfg);
  const mbprk::TraceVerdict verdict = mbprk::check_trace(trace);

  char summary[256];
  std::snprintf(summary, sizeof summary,
                "steps=%zu final_time=%.17g worst_max_norm=%.17g "
                "worst_energy_delta=%.17g monitors=%s",
                trace.rows.size() - 1, trace.rows.back().time,
                verdict.worst_max_norm, verdict.worst_energy_delta,
                verdict.all_pass() ? "pass" : "breached");

  if (args.out.empty() || args.out == "-") {
    trace.write_csv(std::cout);
    std::cerr << summary << "\n";
  } else {
    std::ofstream out(args.out);
    if (!out)
      throw mbprk::ConfigError("cannot open output file '" + args.out + "'");
    trace.write_csv(out);
    std::cout << summary << "\n";
  }
  return exit_ok;
}

int run_check(const CheckArgs& args) {
  std::ifstream in(args.trace_file);
  if (!in)
    throw mbprk::ParseError("cannot open trace file '" + args.trace_file +
                            "'");
  const mbprk::SimulationTrace trace = mbprk::SimulationTrace::read_csv(in);
  const mbprk::TraceVerdict v = mbprk::check_trace(trace);
  std::printf("max_norm: worst %.17g at step %ld -> %s\n", v.worst_max_norm,
              v.worst_max_norm_step, v.mbp_pass ? "pass" : "fail");
  std::printf("energy_delta: worst %.17g at step %ld -> %s\n",
              v.worst_energy_delta, v.worst_energy_delta_step,
              v.energy_pass ? "pass" : "fail");
  return v.all_pass() ? exit_ok : exit_check_failed;
}

int run_study(const StudyArgs& args) {
  mbprk::ButcherTableau t = resolve_and_validate(args.scheme);
  if (args.taus.empty())
    throw mbprk::ConfigError("--taus requires at least one step size");
  const auto rows = mbprk::convergence_study(t, args.epsilon, args.grid_n,
                                             args.t_final, args.taus, args.ic);
  std::printf("%-14s %-14s %s\n", "tau", "linf_error", "observed_order");
  for (const auto& row : rows) {
    if (row.observed_order)
      std::printf("%-14.6e %-14.6e %.3f\n", row.tau, row.error,
                  *row.observed_order);
    else
      std::printf("%-14.6e %-14.6e -\n", row.tau, row.error);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runge-Kutta certificates and 1D Allen-Cahn runs"};
  app.require_subcommand(1);

  CertifyArgs certify_args;
  auto* certify = app.add_subcommand(
      "certify", "Certify a scheme for max-bound and energy dissipation");
  certify->add_option("scheme", certify_args.scheme,
                      "Preset name or tableau file")
      ->required();
  certify->add_option("--epsilon", certify_args.epsilon, "Interface width");
  certify->add_option("--grid-n", certify_args.grid_n, "Grid points");
  certify->add_option("--bound-mode", certify_args.bound_mode,
                      "Single-step bound: safe|paper");

  SimulateArgs sim_args;
  auto* simulate =
      app.add_subcommand("simulate", "Run a 1D periodic Allen-Cahn solve");
  simulate->add_option("scheme", sim_args.scheme, "Preset name or tableau file")
      ->required();
  simulate->add_option("--epsilon", sim_args.epsilon, "Interface width");
  simulate->add_option("--grid-n", sim_args.grid_n, "Grid points");
  simulate->add_option("--t-final", sim_args.t_final, "End time");
  simulate->add_option("--tau", sim_args.tau,
                       "Step size, auto-mbp, or auto-energy");
  simulate->add_option("--ic", sim_args.ic,
                       "random:<seed> | cosine:<k> | file:<path>");
  simulate->add_option("--out", sim_args.out, "Trace file ('-' for stdout)");
  simulate->add_option("--bound-mode", sim_args.bound_mode,
                       "Single-step bound: safe|paper");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Re-validate a recorded trace");
  check->add_option("trace", check_args.trace_file, "Trace CSV file")
      ->required();

  StudyArgs study_args;
  auto* study =
      app.add_subcommand("study", "Empirical convergence-order study");
  study->add_option("scheme", study_args.scheme, "Preset name or tableau file")
      ->required();
  study->add_option("--epsilon", study_args.epsilon, "Interface width");
  study->add_option("--grid-n", study_args.grid_n, "Grid points");
  study->add_option("--t-final", study_args.t_final, "End time");
  study->add_option("--taus", study_args.taus, "Step sizes")
      ->delimiter(',')
      ->required();
  study->add_option("--ic", study_args.ic, "Initial condition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (certify->parsed()) return run_certify(certify_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (check->parsed()) return run_check(check_args);
    if (study->parsed()) return run_study(study_args);
    return exit_usage;
  } catch (const mbprk::BoundViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_violation;
  } catch (const mbprk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_data;
  } catch (const mbprk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const mbprk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_data;
  }
}
