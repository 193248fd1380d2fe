#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mbprk/errors.hpp"
#include "mbprk/tableau.hpp"

namespace mbprk {

/// Five-stage fourth-order scheme in its native low-storage
/// representation: four single-derivative stages plus a final stage that
/// combines derivatives of the last two stage values.
inline const ShuOsherForm& rk4_five_stage_form() {
  static const ShuOsherForm form = [] {
    const double d1 = 0.391752226571890;
    const double p20 = 0.444370493651235;
    const double p21 = 0.555629506348765;
    const double d2 = 0.368410593050371;
    const double p30 = 0.620101851488403;
    const double p32 = 0.379898148511597;
    const double d3 = 0.251891774271694;
    const double p40 = 0.178079954393132;
    const double p43 = 0.821920045606868;
    const double d4 = 0.544974750228521;
    const double p52 = 0.517231671970585;
    const double p53 = 0.096059710526147;
    const double d53 = 0.063692468666290;
    const double p54 = 0.386708617503269;
    const double d54 = 0.226007483236906;
    ShuOsherForm f;
    f.stages = 5;
    f.alpha = {{1.0},
               {p20, p21},
               {p30, 0.0, p32},
               {p40, 0.0, 0.0, p43},
               {0.0, 0.0, p52, p53, p54}};
    f.beta = {{d1},
              {0.0, d2},
              {0.0, 0.0, d3},
              {0.0, 0.0, 0.0, d4},
              {0.0, 0.0, 0.0, d53, d54}};
    return f;
  }();
  return form;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "euler",          "rk2-ssp",     "rk3-ssp",
      "rk3-nondissipative", "rk4-5stage", "classic-rk4"};
  return names;
}

inline bool is_preset(std::string_view name) {
  for (const auto& n : preset_names())
    if (n == name) return true;
  return false;
}

/// Embedded schemes addressable by name.
inline const ButcherTableau& preset(std::string_view name) {
  static const ButcherTableau euler = make_tableau("euler", {}, {1.0});
  static const ButcherTableau rk2 =
      make_tableau("rk2-ssp", {{1.0}}, {0.5, 0.5});
  static const ButcherTableau rk3 = make_tableau(
      "rk3-ssp", {{1.0}, {0.25, 0.25}}, {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0});
  static const ButcherTableau rk3_nd = make_tableau(
      "rk3-nondissipative", {{1.0}, {1.0, 1.0}},
      {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0});
  static const ButcherTableau rk4_5stage = [] {
    ButcherTableau t = shu_osher_to_butcher(rk4_five_stage_form());
    t.name = "rk4-5stage";
    return t;
  }();
  static const ButcherTableau classic_rk4 = make_tableau(
      "classic-rk4", {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}},
      {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0});

  if (name == "euler") return euler;
  if (name == "rk2-ssp") return rk2;
  if (name == "rk3-ssp") return rk3;
  if (name == "rk3-nondissipative") return rk3_nd;
  if (name == "rk4-5stage") return rk4_5stage;
  if (name == "classic-rk4") return classic_rk4;
  throw ConfigError("unknown preset '" + std::string(name) +
                    "'; available: euler, rk2-ssp, rk3-ssp, "
                    "rk3-nondissipative, rk4-5stage, classic-rk4");
}

}  // namespace mbprk
