#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "mbprk/certificate.hpp"
#include "mbprk/errors.hpp"
#include "mbprk/spatial.hpp"
#include "mbprk/stepping.hpp"
#include "mbprk/tableau.hpp"
#include "mbprk/trace.hpp"

namespace mbprk {

/// One-sided monitor slacks, absolute: a step passes when every stage
/// max norm is at most 1 + max_norm_slack and every energy increment is
/// at most energy_delta_slack.
inline constexpr double max_norm_slack = 1e-14;
inline constexpr double energy_delta_slack = 1e-12;

/// Fraction of a certified bound used by the automatic step choices, to
/// absorb round-off in the bound computation itself.
inline constexpr double auto_bound_safety = 0.9;

struct TauSpec {
  enum class Mode { fixed, auto_mbp, auto_energy };
  Mode mode = Mode::fixed;
  double value = 0.0;

  static TauSpec fixed(double tau) {
    if (!(tau > 0.0))
      throw ConfigError("time step must be positive, got " +
                        std::to_string(tau));
    return TauSpec{Mode::fixed, tau};
  }

  static TauSpec parse(const std::string& text) {
    if (text == "auto-mbp") return TauSpec{Mode::auto_mbp, 0.0};
    if (text == "auto-energy") return TauSpec{Mode::auto_energy, 0.0};
    try {
      std::size_t pos = 0;
      const double tau = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("trailing text");
      return fixed(tau);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("time step '" + text +
                        "' is neither a number nor auto-mbp/auto-energy");
    }
  }

  const char* mode_name() const {
    switch (mode) {
      case Mode::fixed: return "fixed";
      case Mode::auto_mbp: return "auto-mbp";
      default: return "auto-energy";
    }
  }
};

struct SimulationConfig {
  ButcherTableau scheme;
  double epsilon = 0.1;
  int n = 128;
  double t_final = 1.0;
  TauSpec tau;
  std::string ic = "random:42";
  Tau0Mode bound_mode = Tau0Mode::safe;
};

/// Forward Euler update u + tau*G(u). Bound enforcement is the caller's.
inline State euler_step(const State& u, double tau, double epsilon) {
  std::vector<double> g = rhs_vector(u.values, u.grid.h, epsilon);
  std::vector<double> out(u.values.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = u.values[j] + tau * g[j];
  return State{u.grid, std::move(out)};
}

/// One step of the Shu-Osher recursion applied to the semi-discrete
/// system.
inline State rk_step(const State& u, const ShuOsherForm& f, double tau,
                     double epsilon) {
  check_shu_osher(f);
  const double h = u.grid.h;
  auto stage_rhs = [h, epsilon](const Vector& v) {
    return rhs_vector(v, h, epsilon);
  };
  auto stages = shu_osher_stages(u.values, f, tau, stage_rhs);
  return State{u.grid, std::move(stages.back())};
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Advances the system from t=0 to t_final, enforcing the selected step
/// bound and recording max-norm and energy monitors each step. Under an
/// automatic step choice a monitor breach is a hard BoundViolation; with
/// an explicit step it is only counted.
inline SimulationTrace simulate(const SimulationConfig& cfg) {
  {
    const auto violations = validate_tableau(cfg.scheme);
    if (!violations.empty())
      throw ConfigError("simulate: invalid tableau: " +
                        violations.front().message);
  }
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (cfg.t_final < 0.0) throw ConfigError("t_final must be nonnegative");

  const Grid grid = make_grid(cfg.n);
  const StabilityCertificate cert = certify(cfg.scheme);
  const StepBounds bounds =
      step_bounds(cert, cfg.epsilon, grid.h, cfg.bound_mode);

  double tau = 0.0;
  switch (cfg.tau.mode) {
    case TauSpec::Mode::fixed:
      tau = cfg.tau.value;
      break;
    case TauSpec::Mode::auto_mbp:
      tau = auto_bound_safety * bounds.mbp_bound();
      break;
    case TauSpec::Mode::auto_energy:
      try {
        tau = auto_bound_safety * bounds.energy_bound();
      } catch (const NonPositiveLambda&) {
        throw ConfigError(
            "auto-energy requires a positive discriminant eigenvalue, but "
            "lambda_min = " +
            detail::format_double(cert.lambda_min) + " <= 0 for scheme '" +
            cfg.scheme.name + "'");
      }
      break;
  }
  if (!(tau > 0.0)) throw ConfigError("resolved time step is not positive");

  const bool hard_mbp = cfg.tau.mode != TauSpec::Mode::fixed;
  const bool hard_energy = cfg.tau.mode == TauSpec::Mode::auto_energy;

  // Step with the nonnegative representation when one exists; schemes
  // without one run on the plain coefficient recursion.
  const ShuOsherForm form =
      cert.ssp_form ? *cert.ssp_form : butcher_as_shu_osher(cfg.scheme);

  long steps = 0;
  if (cfg.t_final > 0.0) {
    const double raw = std::ceil(cfg.t_final / tau - 1e-12);
    if (raw > 1e9)
      throw ConfigError("run would need " + std::to_string(raw) +
                        " steps; refusing");
    steps = static_cast<long>(raw);
  }

  State u = make_initial_state(grid, cfg.ic);
  double energy = energy_vector(u.values, grid.h, cfg.epsilon);
  double worst_stage_norm = max_abs(u.values);
  long warnings = 0;

  SimulationTrace trace;
  trace.rows.push_back(
      TraceRow{0, 0.0, max_abs(u.values), energy, 0.0});

  auto stage_rhs = [&grid, &cfg](const Vector& v) {
    return rhs_vector(v, grid.h, cfg.epsilon);
  };

  double t = 0.0;
  for (long k = 1; k <= steps; ++k) {
    const double t_next = (k == steps) ? cfg.t_final
                                       : std::min(k * tau, cfg.t_final);
    const double step_tau = t_next - t;

    auto stages = shu_osher_stages(u.values, form, step_tau, stage_rhs);
    double stage_norm = 0.0;
    for (std::size_t i = 1; i < stages.size(); ++i)
      stage_norm = std::max(stage_norm, max_abs(stages[i]));
    worst_stage_norm = std::max(worst_stage_norm, stage_norm);
    if (stage_norm > 1.0 + max_norm_slack) {
      if (hard_mbp)
        throw BoundViolation("max-norm bound breached at step " +
                                 std::to_string(k) + ": stage norm " +
                                 detail::format_double(stage_norm),
                             k, stage_norm);
      ++warnings;
    }

    u.values = std::move(stages.back());
    const double next_energy = energy_vector(u.values, grid.h, cfg.epsilon);
    const double delta = next_energy - energy;
    if (delta > energy_delta_slack) {
      if (hard_energy)
        throw BoundViolation("energy increased at step " + std::to_string(k) +
                                 " by " + detail::format_double(delta),
                             k, delta);
      ++warnings;
    }
    energy = next_energy;
    t = t_next;
    trace.rows.push_back(TraceRow{k, t, max_abs(u.values), energy, delta});
  }

  auto& md = trace.metadata;
  md.emplace_back("scheme", cfg.scheme.name.empty() ? "(unnamed)"
                                                    : cfg.scheme.name);
  md.emplace_back("stages", std::to_string(cfg.scheme.stages));
  md.emplace_back("epsilon", detail::format_double(cfg.epsilon));
  md.emplace_back("grid_n", std::to_string(cfg.n));
  md.emplace_back("h", detail::format_double(grid.h));
  md.emplace_back("ic", cfg.ic);
  md.emplace_back("tau", detail::format_double(tau));
  md.emplace_back("tau_mode", cfg.tau.mode_name());
  md.emplace_back("bound_mode", to_string(cfg.bound_mode));
  md.emplace_back("tau0_safe", detail::format_double(bounds.tau0_safe));
  md.emplace_back("tau0_paper", detail::format_double(bounds.tau0_paper));
  if (bounds.tau_ssp)
    md.emplace_back("tau_ssp", detail::format_double(*bounds.tau_ssp));
  if (bounds.tau_energy)
    md.emplace_back("tau_energy", detail::format_double(*bounds.tau_energy));
  md.emplace_back("lambda_min", detail::format_double(cert.lambda_min));
  if (cert.ssp_ratio)
    md.emplace_back("ssp_ratio", detail::format_double(*cert.ssp_ratio));
  md.emplace_back("mbp", cert.mbp ? "true" : "false");
  md.emplace_back("energy_dissipative",
                  cert.energy_dissipative ? "true" : "false");
  md.emplace_back("worst_stage_max_norm",
                  detail::format_double(worst_stage_norm));
  md.emplace_back("monitor_warnings", std::to_string(warnings));
  return trace;
}

struct TraceVerdict {
  double worst_max_norm = 0.0;
  long worst_max_norm_step = 0;
  double worst_energy_delta = 0.0;
  long worst_energy_delta_step = 0;
  bool mbp_pass = false;
  bool energy_pass = false;

  bool all_pass() const { return mbp_pass && energy_pass; }
};

/// Re-validates the monitors from persisted rows.
inline TraceVerdict check_trace(const SimulationTrace& trace) {
  if (trace.rows.empty()) throw ParseError("trace has no rows");
  TraceVerdict v;
  v.worst_max_norm = trace.rows.front().max_norm;
  v.worst_max_norm_step = trace.rows.front().step;
  bool have_delta = false;
  for (const TraceRow& r : trace.rows) {
    if (r.max_norm > v.worst_max_norm) {
      v.worst_max_norm = r.max_norm;
      v.worst_max_norm_step = r.step;
    }
    if (&r == &trace.rows.front()) continue;  // row 0 has no increment
    if (!have_delta || r.energy_delta > v.worst_energy_delta) {
      v.worst_energy_delta = r.energy_delta;
      v.worst_energy_delta_step = r.step;
      have_delta = true;
    }
  }
  v.mbp_pass = v.worst_max_norm <= 1.0 + max_norm_slack;
  v.energy_pass = !have_delta || v.worst_energy_delta <= energy_delta_slack;
  return v;
}

struct ConvergenceRow {
  double tau = 0.0;
  double error = 0.0;
  std::optional<double> observed_order;  // versus the previous row
};

namespace detail {

inline Vector integrate_fixed(const ShuOsherForm& form, Vector u, double h,
                              double epsilon, double tau, double t_final) {
  auto stage_rhs = [h, epsilon](const Vector& v) {
    return rhs_vector(v, h, epsilon);
  };
  long steps = 0;
  if (t_final > 0.0)
    steps = static_cast<long>(std::ceil(t_final / tau - 1e-12));
  double t = 0.0;
  for (long k = 1; k <= steps; ++k) {
    const double t_next = (k == steps) ? t_final : std::min(k * tau, t_final);
    u = shu_osher_stages(u, form, t_next - t, stage_rhs).back();
    t = t_next;
  }
  return u;
}

}  // namespace detail

/// Empirical order check: integrates to t_final for each listed step
/// size and compares against a reference run with step min(taus)/16.
/// Successive rows report log2 error ratios.
inline std::vector<ConvergenceRow> convergence_study(
    const ButcherTableau& scheme, double epsilon, int n, double t_final,
    std::vector<double> taus, const std::string& ic = "cosine:1") {
  if (taus.empty()) throw ConfigError("convergence study needs step sizes");
  for (double tau : taus)
    if (!(tau > 0.0)) throw ConfigError("step sizes must be positive");
  const Grid grid = make_grid(n);
  const State u0 = make_initial_state(grid, ic);

  const StabilityCertificate cert = certify(scheme);
  const ShuOsherForm form =
      cert.ssp_form ? *cert.ssp_form : butcher_as_shu_osher(scheme);

  double tau_ref = taus.front();
  for (double tau : taus) tau_ref = std::min(tau_ref, tau);
  tau_ref /= 16.0;
  const Vector reference = detail::integrate_fixed(form, u0.values, grid.h,
                                                   epsilon, tau_ref, t_final);

  std::vector<ConvergenceRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    const Vector u = detail::integrate_fixed(form, u0.values, grid.h, epsilon,
                                             tau, t_final);
    double err = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
      err = std::max(err, std::abs(u[j] - reference[j]));
    ConvergenceRow row{tau, err, std::nullopt};
    if (!rows.empty() && rows.back().error > 0.0 && err > 0.0 &&
        rows.back().tau != tau)
      row.observed_order =
          std::log2(rows.back().error / err) / std::log2(rows.back().tau / tau);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mbprk
