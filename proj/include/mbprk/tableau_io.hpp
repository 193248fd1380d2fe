#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbprk/errors.hpp"
#include "mbprk/presets.hpp"
#include "mbprk/tableau.hpp"

namespace mbprk {

/// Reads a tableau document of the form
///   {"name": "...", "s": 3, "a": [[...],[...]], "b": [...], "c": [...]}
/// where `a` holds rows 1..s-1, `b` the s weights and `c` (optional) the
/// nodes. Nodes are computed from the coefficient row sums when absent;
/// a leading zero node may be included or left off.
inline ButcherTableau tableau_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("tableau document must be an object");
    const int s = j.at("s").get<int>();
    if (s < 1) throw ParseError("stage count must be positive");

    RaggedArray a_rows;
    if (j.contains("a")) {
      for (const auto& row : j.at("a"))
        a_rows.push_back(row.get<std::vector<double>>());
    }
    if (static_cast<int>(a_rows.size()) != s - 1)
      throw ParseError("field 'a' must hold " + std::to_string(s - 1) +
                       " rows, got " + std::to_string(a_rows.size()));
    std::vector<double> b = j.at("b").get<std::vector<double>>();
    if (static_cast<int>(b.size()) != s)
      throw ParseError("field 'b' must hold " + std::to_string(s) +
                       " weights, got " + std::to_string(b.size()));

    std::string name = j.value("name", std::string{});
    ButcherTableau t = make_tableau(std::move(name), std::move(a_rows),
                                    std::move(b));

    if (j.contains("c")) {
      std::vector<double> c = j.at("c").get<std::vector<double>>();
      if (static_cast<int>(c.size()) == s - 1) c.insert(c.begin(), 0.0);
      if (static_cast<int>(c.size()) != s)
        throw ParseError("field 'c' must hold " + std::to_string(s) +
                         " (or " + std::to_string(s - 1) + ") nodes");
      t.c = std::move(c);
    }
    return t;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid tableau: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid tableau document: ") + e.what());
  }
}

inline nlohmann::json tableau_to_json(const ButcherTableau& t) {
  nlohmann::json j;
  if (!t.name.empty()) j["name"] = t.name;
  j["s"] = t.stages;
  nlohmann::json a = nlohmann::json::array();
  for (int i = 1; i < t.stages; ++i) a.push_back(t.rows[i - 1]);
  j["a"] = a;
  j["b"] = t.b();
  j["c"] = t.c;
  return j;
}

inline ButcherTableau load_tableau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tableau file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("tableau file '" + path + "': " + e.what());
  }
  ButcherTableau t = tableau_from_json(j);
  if (t.name.empty())
    t.name = std::filesystem::path(path).stem().string();
  return t;
}

/// Resolves a scheme argument: an existing file wins over a preset of
/// the same name (with a note in `warning` when that happens); anything
/// else must be a preset name.
inline ButcherTableau resolve_scheme(const std::string& arg,
                                     std::string* warning = nullptr) {
  std::error_code ec;
  if (std::filesystem::exists(arg, ec)) {
    if (warning && is_preset(arg))
      *warning = "'" + arg + "' names both a file and a preset; using the file";
    return load_tableau_file(arg);
  }
  if (is_preset(arg)) return preset(arg);
  throw ConfigError("'" + arg + "' is neither a readable file nor a preset");
}

}  // namespace mbprk
