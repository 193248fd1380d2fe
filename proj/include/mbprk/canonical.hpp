#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mbprk/errors.hpp"
#include "mbprk/linalg.hpp"
#include "mbprk/tableau.hpp"

namespace mbprk {

/// Single-derivative stage representation: v_i = sum_k p_{ik} v_k +
/// d_i tau G(v_{i-1}). Rows of p sum to one (entries may be negative);
/// every d_i must be positive.
struct CanonicalForm {
  int stages = 0;
  RaggedArray p;
  std::vector<double> d;
};

namespace detail {

inline void check_canonical(const CanonicalForm& cf) {
  for (int i = 1; i <= cf.stages; ++i) {
    double sum = 0.0;
    for (double v : cf.p[i - 1]) sum += v;
    if (std::abs(sum - 1.0) > consistency_tol)
      throw ConfigError("canonical row " + std::to_string(i) + " sums to " +
                        std::to_string(sum));
    if (!(cf.d[i - 1] > 0.0))
      throw NegativeD("canonical stage " + std::to_string(i) +
                      " has nonpositive derivative multiplier d = " +
                      std::to_string(cf.d[i - 1]));
  }
}

}  // namespace detail

/// Converts a tableau to canonical form by forcing every derivative term
/// except the last in each stage to zero. The resulting triangular
/// system is solved by back-substitution from column i-2 down to 0, each
/// step dividing by a sub-diagonal coefficient; p_{i0} absorbs the unit
/// row sum and d_i = a_{i,i-1}.
inline CanonicalForm to_canonical(const ButcherTableau& t) {
  for (int i = 1; i <= t.stages; ++i)
    if (std::abs(t.subdiagonal(i)) <= positivity_floor)
      throw SubdiagonalZero("to_canonical: sub-diagonal coefficient of stage " +
                            std::to_string(i) + " is zero");

  CanonicalForm cf;
  cf.stages = t.stages;
  cf.p.resize(static_cast<std::size_t>(t.stages));
  cf.d.resize(static_cast<std::size_t>(t.stages));
  for (int i = 1; i <= t.stages; ++i) {
    std::vector<double> row(static_cast<std::size_t>(i), 0.0);
    for (int k = i - 2; k >= 0; --k) {
      double acc = t.a(i, k);
      for (int l = k + 2; l < i; ++l) acc -= row[l] * t.a(l, k);
      row[k + 1] = acc / t.a(k + 1, k);
    }
    double off = 0.0;
    for (int j = 1; j < i; ++j) off += row[j];
    row[0] = 1.0 - off;
    cf.p[i - 1] = std::move(row);
    cf.d[i - 1] = t.subdiagonal(i);
    if (cf.d[i - 1] < 0.0)
      throw NegativeD("to_canonical: stage " + std::to_string(i) +
                      " has negative derivative multiplier d = " +
                      std::to_string(cf.d[i - 1]));
  }
  return cf;
}

/// Reduces an arbitrary Shu-Osher form to canonical shape. Working up
/// through the stages, every derivative term G(v_k) with k < i-1 is
/// eliminated by substituting the already-canonical relation of stage
/// k+1, i.e. tau G(v_k) = (v_{k+1} - sum_j p_{k+1,j} v_j) / d_{k+1}.
/// Row sums are preserved exactly because each substitution adds a
/// combination with zero net weight.
inline CanonicalForm canonicalize_general(const ShuOsherForm& f) {
  check_shu_osher(f);
  CanonicalForm cf;
  cf.stages = f.stages;
  cf.p.resize(static_cast<std::size_t>(f.stages));
  cf.d.resize(static_cast<std::size_t>(f.stages));
  for (int i = 1; i <= f.stages; ++i) {
    std::vector<double> w = f.alpha[i - 1];
    std::vector<double> g = f.beta[i - 1];
    for (int k = i - 2; k >= 0; --k) {
      if (g[k] == 0.0) continue;
      const double dk1 = cf.d[k];  // multiplier of stage k+1
      if (std::abs(dk1) <= positivity_floor)
        throw NotEliminable(
            "canonicalize_general: stage " + std::to_string(i) +
            " references G(v_" + std::to_string(k) +
            ") but stage " + std::to_string(k + 1) +
            " has zero derivative multiplier");
      const double scale = g[k] / dk1;
      w[k + 1] += scale;
      for (int j = 0; j <= k; ++j) w[j] -= scale * cf.p[k][j];
      g[k] = 0.0;
    }
    cf.p[i - 1] = std::move(w);
    cf.d[i - 1] = g[i - 1];
    if (!(cf.d[i - 1] > 0.0))
      throw NegativeD("canonicalize_general: stage " + std::to_string(i) +
                      " has nonpositive derivative multiplier d = " +
                      std::to_string(cf.d[i - 1]));
  }
  detail::check_canonical(cf);
  return cf;
}

/// Upper-triangular stability matrix: Phi_{ij} = (sum_{k<i} p_{jk}) / d_j
/// for stage indices 1 <= i <= j <= s (stored 0-based). The unit row
/// sums make the diagonal exactly 1/d_i.
inline SquareMatrix phi_matrix(const CanonicalForm& cf) {
  detail::check_canonical(cf);
  SquareMatrix phi(cf.stages);
  for (int j = 1; j <= cf.stages; ++j) {
    double partial = 0.0;
    for (int i = 1; i <= j; ++i) {
      partial += cf.p[j - 1][i - 1];
      phi(i - 1, j - 1) = partial / cf.d[j - 1];
    }
    // row sums are one, so the diagonal is exactly 1/d_j
    phi(j - 1, j - 1) = 1.0 / cf.d[j - 1];
  }
  return phi;
}

}  // namespace mbprk
