#pragma once

#include <optional>

#include <json.hpp>

#include "mbprk/certificate.hpp"

namespace mbprk {

inline nlohmann::json matrix_to_json(const SquareMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m.rows()) rows.push_back(row);
  return rows;
}

/// Machine-readable certificate report; bounds are included when grid
/// parameters were supplied.
inline nlohmann::json certificate_report(
    const StabilityCertificate& cert,
    const std::optional<StepBounds>& bounds = std::nullopt) {
  nlohmann::json j;
  j["scheme"] = cert.scheme;
  j["stages"] = cert.stages;
  j["mbp"] = cert.mbp;
  j["energy_dissipative"] = cert.energy_dissipative;
  j["energy_indeterminate"] = cert.energy_indeterminate;
  j["lambda_min"] = cert.lambda_min;
  if (cert.ssp_ratio)
    j["ssp_ratio"] = *cert.ssp_ratio;
  else
    j["ssp_ratio"] = nullptr;
  if (cert.witness) {
    j["witness"] = {
        {"row", cert.witness->row},
        {"col", cert.witness->col},
        {"value", cert.witness->value},
        {"kind", cert.witness->kind == WitnessKind::non_positive_entry
                     ? "non_positive_entry"
                     : "zero_alpha_nonzero_beta"},
    };
  }
  j["phi"] = matrix_to_json(cert.phi);
  j["delta_e"] = matrix_to_json(cert.delta_e);
  if (bounds) {
    nlohmann::json b;
    b["epsilon"] = bounds->epsilon;
    b["h"] = bounds->h;
    b["bound_mode"] = to_string(bounds->mode);
    b["tau0_safe"] = bounds->tau0_safe;
    b["tau0_paper"] = bounds->tau0_paper;
    b["tau_ssp"] = bounds->tau_ssp ? nlohmann::json(*bounds->tau_ssp)
                                   : nlohmann::json(nullptr);
    b["tau_energy"] = bounds->tau_energy ? nlohmann::json(*bounds->tau_energy)
                                         : nlohmann::json(nullptr);
    j["bounds"] = b;
  } else {
    j["bounds"] = nullptr;
  }
  return j;
}

}  // namespace mbprk
