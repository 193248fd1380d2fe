#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "mbprk/canonical.hpp"
#include "mbprk/errors.hpp"
#include "mbprk/linalg.hpp"
#include "mbprk/tableau.hpp"

namespace mbprk {

/// Eigenvalues within this band of zero certify neither dissipation nor
/// its failure.
inline constexpr double lambda_tol = 1e-12;

/// Structure-preservation certificate for one scheme: the positivity
/// verdict with its Shu-Osher witness data, the stability matrix Phi of
/// the canonical form, the symmetrized energy discriminant and its
/// smallest eigenvalue.
struct StabilityCertificate {
  std::string scheme;
  int stages = 0;
  bool mbp = false;
  std::optional<SspWitness> witness;     // present iff not MBP
  std::optional<double> ssp_ratio;       // min alpha/beta, present iff MBP
  std::optional<ShuOsherForm> ssp_form;  // constructed form, present iff MBP
  CanonicalForm canonical;
  SquareMatrix phi;
  SquareMatrix delta_e;
  double lambda_min = 0.0;
  bool energy_dissipative = false;   // lambda_min > lambda_tol
  bool energy_indeterminate = false; // |lambda_min| <= lambda_tol
};

inline StabilityCertificate certify(const ButcherTableau& t) {
  {
    const auto violations = validate_tableau(t);
    if (!violations.empty())
      throw ConfigError("certify: invalid tableau: " + violations.front().message);
  }

  StabilityCertificate cert;
  cert.scheme = t.name;
  cert.stages = t.stages;

  SspVerdict verdict = ssp_check(t);
  cert.mbp = verdict.is_ssp;
  cert.witness = verdict.witness;
  if (verdict.is_ssp) {
    cert.ssp_form = std::move(verdict.constructed_form);
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= cert.ssp_form->stages; ++i) {
      for (int k = 0; k < i; ++k) {
        const double beta = cert.ssp_form->beta[i - 1][k];
        if (std::abs(beta) <= positivity_floor) continue;  // ratio is infinite
        ratio = std::min(ratio, cert.ssp_form->alpha[i - 1][k] / beta);
      }
    }
    cert.ssp_ratio = ratio;
  }

  // A failed positivity verdict does not block the energy analysis.
  cert.canonical = to_canonical(t);
  cert.phi = phi_matrix(cert.canonical);
  cert.delta_e = symmetric_part(cert.phi);
  cert.lambda_min = smallest_eigenvalue(cert.delta_e);
  cert.energy_dissipative = cert.lambda_min > lambda_tol;
  cert.energy_indeterminate = std::abs(cert.lambda_min) <= lambda_tol;
  return cert;
}

enum class Tau0Mode { safe, paper };

inline const char* to_string(Tau0Mode mode) {
  return mode == Tau0Mode::safe ? "safe" : "paper";
}

/// Admissible time-step bounds for a certified scheme on a grid with
/// spacing h and interface width epsilon. Two single-step bounds are
/// computed: the provable one, min{h^2/(4 eps), eps/4}, and the looser
/// printed variant min{4 h^2/eps, eps/4} kept behind Tau0Mode::paper.
/// tau_ssp scales the selected single-step bound by the scheme's
/// coefficient ratio; tau_energy additionally caps it with
/// lambda / (1/eps + 2 eps/h^2).
struct StepBounds {
  double epsilon = 0.0;
  double h = 0.0;
  Tau0Mode mode = Tau0Mode::safe;
  double tau0_safe = 0.0;
  double tau0_paper = 0.0;
  std::optional<double> tau_ssp;     // absent when the scheme is not MBP
  std::optional<double> tau_energy;  // absent when lambda_min is not positive

  double mbp_bound() const {
    if (!tau_ssp)
      throw ConfigError("no MBP step bound: the scheme is not certified "
                        "maximum-bound preserving");
    return *tau_ssp;
  }

  double energy_bound() const {
    if (!tau_energy) {
      if (!tau_ssp)
        throw ConfigError("no energy step bound: the scheme is not "
                          "certified maximum-bound preserving");
      throw NonPositiveLambda(
          "no energy step bound: smallest discriminant eigenvalue is not "
          "positive");
    }
    return *tau_energy;
  }
};

inline StepBounds step_bounds(const StabilityCertificate& cert, double epsilon,
                              double h, Tau0Mode mode = Tau0Mode::safe) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(h > 0.0)) throw ConfigError("grid spacing must be positive");
  StepBounds b;
  b.epsilon = epsilon;
  b.h = h;
  b.mode = mode;
  b.tau0_safe = std::min(h * h / (4.0 * epsilon), epsilon / 4.0);
  b.tau0_paper = std::min(4.0 * h * h / epsilon, epsilon / 4.0);
  const double tau0 = mode == Tau0Mode::safe ? b.tau0_safe : b.tau0_paper;
  if (cert.mbp && cert.ssp_ratio) {
    b.tau_ssp = *cert.ssp_ratio * tau0;
    if (cert.lambda_min > lambda_tol) {
      const double energy_term =
          cert.lambda_min / (1.0 / epsilon + 2.0 * epsilon / (h * h));
      b.tau_energy = std::min(energy_term, *b.tau_ssp);
    }
  }
  return b;
}

}  // namespace mbprk
