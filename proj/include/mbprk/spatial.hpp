#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "mbprk/errors.hpp"
#include "mbprk/rng.hpp"

namespace mbprk {

/// Uniform periodic grid on [0, 2*pi).
struct Grid {
  int n = 0;
  double h = 0.0;
};

inline Grid make_grid(int n) {
  if (n < 4) throw ConfigError("grid needs at least 4 points, got " +
                               std::to_string(n));
  return Grid{n, 2.0 * std::numbers::pi / n};
}

struct State {
  Grid grid;
  std::vector<double> values;
};

inline State make_state(const Grid& grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.n)
    throw ShapeMismatch("state has " + std::to_string(values.size()) +
                        " values for a grid of " + std::to_string(grid.n));
  return State{grid, std::move(values)};
}

// Vector-level kernels; the State wrappers below carry the grid.

inline void laplacian_into(const std::vector<double>& u, double h,
                           std::vector<double>& out) {
  const std::size_t n = u.size();
  out.resize(n);
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t j = 0; j < n; ++j) {
    const double left = u[j == 0 ? n - 1 : j - 1];
    const double right = u[j + 1 == n ? 0 : j + 1];
    out[j] = (left - 2.0 * u[j] + right) * inv_h2;
  }
}

inline std::vector<double> rhs_vector(const std::vector<double>& u, double h,
                                      double epsilon) {
  std::vector<double> out;
  laplacian_into(u, h, out);
  const double inv_eps = 1.0 / epsilon;
  for (std::size_t j = 0; j < u.size(); ++j)
    out[j] = epsilon * out[j] + inv_eps * (u[j] - u[j] * u[j] * u[j]);
  return out;
}

inline double max_abs(const std::vector<double>& u) {
  double worst = 0.0;
  for (double v : u) worst = std::max(worst, std::abs(v));
  return worst;
}

/// Discrete free energy (eps/2)*||forward difference||^2 +
/// (1/eps)*sum_j (1-u_j^2)^2/4. The gradient part is accumulated from
/// squared forward differences so the quadratic term stays nonnegative
/// in floating point; both sums use compensated accumulation.
inline double energy_vector(const std::vector<double>& u, double h,
                            double epsilon) {
  const std::size_t n = u.size();
  double grad = 0.0, grad_c = 0.0;
  double pot = 0.0, pot_c = 0.0;
  auto add = [](double& sum, double& comp, double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  const double inv_h = 1.0 / h;
  for (std::size_t j = 0; j < n; ++j) {
    const double diff = (u[j + 1 == n ? 0 : j + 1] - u[j]) * inv_h;
    add(grad, grad_c, diff * diff);
    const double w = 1.0 - u[j] * u[j];
    add(pot, pot_c, w * w);
  }
  return 0.5 * epsilon * grad + pot / (4.0 * epsilon);
}

// State-level operations.

inline State apply_laplacian(const State& s) {
  std::vector<double> out;
  laplacian_into(s.values, s.grid.h, out);
  return State{s.grid, std::move(out)};
}

/// Elementwise double-well reaction u - u^3.
inline State nonlinearity(const State& s) {
  std::vector<double> out(s.values.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = s.values[j] - s.values[j] * s.values[j] * s.values[j];
  return State{s.grid, std::move(out)};
}

/// Semi-discrete right-hand side eps*Lap(u) + (u - u^3)/eps.
inline State rhs(const State& s, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  return State{s.grid, rhs_vector(s.values, s.grid.h, epsilon)};
}

inline double discrete_energy(const State& s, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  return energy_vector(s.values, s.grid.h, epsilon);
}

inline double max_norm(const State& s) { return max_abs(s.values); }

// Initial conditions and single-column state files.

inline std::vector<double> read_state_values(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      std::size_t pos = 0;
      const double v = std::stod(line, &pos);
      while (pos < line.size() &&
             (line[pos] == ' ' || line[pos] == '\r' || line[pos] == '\t'))
        ++pos;
      if (pos != line.size()) throw std::invalid_argument("trailing text");
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("state file line " + std::to_string(lineno) +
                       ": expected a single number, got '" + line + "'");
    }
  }
  return values;
}

inline void write_state_values(std::ostream& out,
                               const std::vector<double>& values) {
  char buf[40];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.16e\n", v);
    out << buf;
  }
}

/// Builds the starting state from a specifier:
///   random:<seed>  uniform values in [-1, 1] from a seeded xoshiro256++
///   cosine:<k>     samples of cos(k x)
///   file:<path>    single-column list of grid values
inline State make_initial_state(const Grid& grid, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("initial condition '" + spec +
                     "' is not of the form kind:argument");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);

  if (kind == "random") {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(arg);
    } catch (const std::exception&) {
      throw ParseError("random seed '" + arg + "' is not a 64-bit integer");
    }
    Xoshiro256pp rng(seed);
    std::vector<double> values(static_cast<std::size_t>(grid.n));
    for (double& v : values) v = rng.uniform_sym();
    return State{grid, std::move(values)};
  }
  if (kind == "cosine") {
    long k = 0;
    try {
      k = std::stol(arg);
    } catch (const std::exception&) {
      throw ParseError("cosine mode '" + arg + "' is not an integer");
    }
    std::vector<double> values(static_cast<std::size_t>(grid.n));
    for (int j = 0; j < grid.n; ++j)
      values[static_cast<std::size_t>(j)] = std::cos(k * j * grid.h);
    return State{grid, std::move(values)};
  }
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open state file '" + arg + "'");
    std::vector<double> values = read_state_values(in);
    if (static_cast<int>(values.size()) != grid.n)
      throw ParseError("state file '" + arg + "' has " +
                       std::to_string(values.size()) + " values, expected " +
                       std::to_string(grid.n));
    return State{grid, std::move(values)};
  }
  throw ParseError("unknown initial condition kind '" + kind + "'");
}

}  // namespace mbprk
