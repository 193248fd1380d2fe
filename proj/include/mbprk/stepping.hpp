#pragma once

#include <functional>
#include <vector>

#include "mbprk/canonical.hpp"
#include "mbprk/tableau.hpp"

namespace mbprk {

using Vector = std::vector<double>;
using RhsFn = std::function<Vector(const Vector&)>;

namespace detail {

inline void accumulate(Vector& acc, double weight, const Vector& v) {
  if (weight == 0.0) return;
  for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += weight * v[j];
}

}  // namespace detail

/// All stage values v_0..v_s of one Shu-Osher step.
inline std::vector<Vector> shu_osher_stages(const Vector& u0,
                                            const ShuOsherForm& f, double tau,
                                            const RhsFn& rhs) {
  std::vector<Vector> v;
  v.reserve(static_cast<std::size_t>(f.stages) + 1);
  v.push_back(u0);
  std::vector<Vector> g;
  g.reserve(static_cast<std::size_t>(f.stages));
  for (int i = 1; i <= f.stages; ++i) {
    g.push_back(rhs(v[static_cast<std::size_t>(i) - 1]));
    Vector next(u0.size(), 0.0);
    for (int k = 0; k < i; ++k) {
      detail::accumulate(next, f.alpha[i - 1][k], v[static_cast<std::size_t>(k)]);
      detail::accumulate(next, tau * f.beta[i - 1][k], g[static_cast<std::size_t>(k)]);
    }
    v.push_back(std::move(next));
  }
  return v;
}

/// Stage values of the plain coefficient recursion v_i = v_0 +
/// tau * sum_j a_{ij} G(v_j).
inline std::vector<Vector> butcher_stages(const Vector& u0,
                                          const ButcherTableau& t, double tau,
                                          const RhsFn& rhs) {
  std::vector<Vector> v;
  v.reserve(static_cast<std::size_t>(t.stages) + 1);
  v.push_back(u0);
  std::vector<Vector> g;
  g.reserve(static_cast<std::size_t>(t.stages));
  for (int i = 1; i <= t.stages; ++i) {
    g.push_back(rhs(v[static_cast<std::size_t>(i) - 1]));
    Vector next = u0;
    for (int k = 0; k < i; ++k)
      detail::accumulate(next, tau * t.a(i, k), g[static_cast<std::size_t>(k)]);
    v.push_back(std::move(next));
  }
  return v;
}

/// Stage values of the canonical recursion v_i = sum_k p_{ik} v_k +
/// d_i tau G(v_{i-1}).
inline std::vector<Vector> canonical_stages(const Vector& u0,
                                            const CanonicalForm& cf,
                                            double tau, const RhsFn& rhs) {
  std::vector<Vector> v;
  v.reserve(static_cast<std::size_t>(cf.stages) + 1);
  v.push_back(u0);
  for (int i = 1; i <= cf.stages; ++i) {
    Vector g = rhs(v[static_cast<std::size_t>(i) - 1]);
    Vector next(u0.size(), 0.0);
    for (int k = 0; k < i; ++k)
      detail::accumulate(next, cf.p[i - 1][k], v[static_cast<std::size_t>(k)]);
    detail::accumulate(next, cf.d[i - 1] * tau, g);
    v.push_back(std::move(next));
  }
  return v;
}

/// Trivial Shu-Osher representation of a tableau: alpha puts all weight
/// on v_0 and beta copies the coefficients. Used to step schemes that
/// admit no nonnegative representation.
inline ShuOsherForm butcher_as_shu_osher(const ButcherTableau& t) {
  ShuOsherForm f;
  f.stages = t.stages;
  f.alpha.resize(static_cast<std::size_t>(t.stages));
  for (int i = 1; i <= t.stages; ++i) {
    f.alpha[i - 1].assign(static_cast<std::size_t>(i), 0.0);
    f.alpha[i - 1][0] = 1.0;
  }
  f.beta = t.rows;
  return f;
}

}  // namespace mbprk
