#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mbprk/errors.hpp"

namespace mbprk {

struct TraceRow {
  long step = 0;
  double time = 0.0;
  double max_norm = 0.0;
  double energy = 0.0;
  double energy_delta = 0.0;
};

inline constexpr const char* trace_header =
    "step,time,max_norm,energy,energy_delta";

/// Per-step record of a simulation run. Metadata lines are written as
/// '#'-prefixed comments ahead of the CSV header; floats carry 17
/// significant digits so values round-trip exactly.
struct SimulationTrace {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<TraceRow> rows;

  void write_csv(std::ostream& out) const {
    for (const auto& [key, value] : metadata)
      out << "# " << key << ": " << value << "\n";
    out << trace_header << "\n";
    char buf[160];
    for (const TraceRow& r : rows) {
      std::snprintf(buf, sizeof buf, "%ld,%.16e,%.16e,%.16e,%.16e\n", r.step,
                    r.time, r.max_norm, r.energy, r.energy_delta);
      out << buf;
    }
  }

  static SimulationTrace read_csv(std::istream& in) {
    SimulationTrace trace;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line[0] == '#') {
        std::string body = line.substr(1);
        const auto colon = body.find(':');
        if (colon != std::string::npos) {
          std::string key = body.substr(0, colon);
          std::string value = body.substr(colon + 1);
          auto trim = [](std::string& s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
              s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
              s.pop_back();
          };
          trim(key);
          trim(value);
          trace.metadata.emplace_back(std::move(key), std::move(value));
        }
        continue;
      }
      if (!header_seen) {
        if (line != trace_header)
          throw ParseError("trace line " + std::to_string(lineno) +
                           ": expected header '" + trace_header + "'");
        header_seen = true;
        continue;
      }
      TraceRow& r = trace.rows.emplace_back();
      std::istringstream fields(line);
      std::string field;
      double* const slots[] = {&r.time, &r.max_norm, &r.energy,
                               &r.energy_delta};
      try {
        if (!std::getline(fields, field, ',')) throw std::invalid_argument("");
        r.step = std::stol(field);
        for (double* slot : slots) {
          if (!std::getline(fields, field, ','))
            throw std::invalid_argument("");
          std::size_t pos = 0;
          *slot = std::stod(field, &pos);
        }
        if (std::getline(fields, field, ','))
          throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("trace line " + std::to_string(lineno) +
                         ": malformed row '" + line + "'");
      }
    }
    if (!header_seen) throw ParseError("trace has no header row");
    return trace;
  }
};

}  // namespace mbprk
