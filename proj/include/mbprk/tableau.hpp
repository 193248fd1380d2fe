#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mbprk/errors.hpp"

namespace mbprk {

/// Entries with magnitude at or below this floor count as zero when a
/// test requires strict positivity, so that round-off introduced by file
/// parsing cannot flip a verdict.
inline constexpr double positivity_floor = 1e-14;

/// Tolerance for the structural consistency checks (node sums, row sums).
inline constexpr double consistency_tol = 1e-12;

using RaggedArray = std::vector<std::vector<double>>;

/// Coefficients of an explicit Runge-Kutta scheme. Row i (1-based,
/// stored at rows[i-1]) holds a_{i0}..a_{i,i-1}; the weight row b is kept
/// as row s, so every operation treats all s rows uniformly. c holds the
/// s node values with c_0 = 0.
struct ButcherTableau {
  int stages = 0;
  RaggedArray rows;
  std::vector<double> c;
  std::string name;

  double a(int i, int k) const { return rows[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(k)]; }
  const std::vector<double>& b() const { return rows.back(); }
  double subdiagonal(int i) const { return a(i, i - 1); }
};

/// Builds a tableau from the strict coefficient rows (rows 1..s-1) and
/// the weight row, computing the nodes from the row sums.
inline ButcherTableau make_tableau(std::string name, RaggedArray a_rows,
                                   std::vector<double> b) {
  const int s = static_cast<int>(b.size());
  if (s < 1) throw ConfigError("tableau needs at least one stage");
  if (static_cast<int>(a_rows.size()) != s - 1)
    throw ShapeMismatch("expected " + std::to_string(s - 1) +
                        " coefficient rows, got " +
                        std::to_string(a_rows.size()));
  for (int i = 1; i < s; ++i)
    if (static_cast<int>(a_rows[i - 1].size()) != i)
      throw ShapeMismatch("coefficient row " + std::to_string(i) +
                          " must have " + std::to_string(i) + " entries");
  ButcherTableau t;
  t.stages = s;
  t.rows = std::move(a_rows);
  t.rows.push_back(std::move(b));
  t.c.assign(s, 0.0);
  for (int i = 1; i < s; ++i) {
    double sum = 0.0;
    for (double v : t.rows[i - 1]) sum += v;
    t.c[i] = sum;
  }
  t.name = std::move(name);
  return t;
}

struct TableauViolation {
  int row;
  double residual;
  std::string message;
};

/// Structural consistency check: nodes must equal row sums and the
/// weight row must sum to one. Violations are reported as data, not
/// thrown.
inline std::vector<TableauViolation> validate_tableau(const ButcherTableau& t) {
  std::vector<TableauViolation> out;
  if (t.stages < 1 || static_cast<int>(t.rows.size()) != t.stages ||
      static_cast<int>(t.c.size()) != t.stages) {
    out.push_back({0, 0.0, "tableau has inconsistent dimensions"});
    return out;
  }
  for (int i = 1; i <= t.stages; ++i) {
    if (static_cast<int>(t.rows[i - 1].size()) != i) {
      out.push_back({i, 0.0, "row " + std::to_string(i) + " must have " +
                                 std::to_string(i) + " entries"});
      return out;
    }
  }
  for (int i = 1; i < t.stages; ++i) {
    double sum = 0.0;
    for (int k = 0; k < i; ++k) sum += t.a(i, k);
    const double residual = std::abs(t.c[i] - sum);
    if (residual > consistency_tol)
      out.push_back({i, residual,
                     "row " + std::to_string(i) +
                         ": node c_" + std::to_string(i) +
                         " differs from the coefficient sum by " +
                         std::to_string(residual)});
  }
  double bsum = 0.0;
  for (double v : t.b()) bsum += v;
  if (std::abs(bsum - 1.0) > consistency_tol)
    out.push_back({t.stages, std::abs(bsum - 1.0),
                   "b-row sums to " + std::to_string(bsum)});
  return out;
}

/// Shu-Osher representation: v_i = sum_k (alpha_{ik} v_k + tau beta_{ik}
/// G(v_k)), with each alpha row summing to one.
struct ShuOsherForm {
  int stages = 0;
  RaggedArray alpha;
  RaggedArray beta;
};

inline void check_shu_osher(const ShuOsherForm& f) {
  if (f.stages < 1 || static_cast<int>(f.alpha.size()) != f.stages ||
      static_cast<int>(f.beta.size()) != f.stages)
    throw ShapeMismatch("Shu-Osher form has inconsistent dimensions");
  for (int i = 1; i <= f.stages; ++i) {
    if (static_cast<int>(f.alpha[i - 1].size()) != i ||
        static_cast<int>(f.beta[i - 1].size()) != i)
      throw ShapeMismatch("Shu-Osher row " + std::to_string(i) +
                          " must have " + std::to_string(i) + " entries");
    double sum = 0.0;
    for (double v : f.alpha[i - 1]) sum += v;
    if (std::abs(sum - 1.0) > consistency_tol)
      throw ConfigError("Shu-Osher alpha row " + std::to_string(i) +
                        " sums to " + std::to_string(sum));
  }
}

enum class WitnessKind { non_positive_entry, zero_alpha_nonzero_beta };

struct SspWitness {
  int row;
  int col;
  double value;
  WitnessKind kind;
};

struct SspVerdict {
  bool is_ssp = false;
  std::optional<SspWitness> witness;         // present iff not SSP
  std::optional<ShuOsherForm> constructed_form;  // present iff SSP
};

ShuOsherForm construct_shu_osher(const ButcherTableau& t);

/// Necessary-and-sufficient positivity test for schemes with nonzero
/// sub-diagonal coefficients: the scheme admits a nonnegative Shu-Osher
/// representation iff every coefficient (weight row included) is
/// positive. Throws NonApplicable when a sub-diagonal entry vanishes,
/// since the equivalence is only proved under that hypothesis.
inline SspVerdict ssp_check(const ButcherTableau& t) {
  for (int i = 1; i <= t.stages; ++i)
    if (std::abs(t.subdiagonal(i)) <= positivity_floor)
      throw NonApplicable("ssp_check: sub-diagonal coefficient of stage " +
                          std::to_string(i) + " is zero");
  SspVerdict verdict;
  for (int i = 1; i <= t.stages; ++i) {
    for (int k = 0; k < i; ++k) {
      if (t.a(i, k) <= positivity_floor) {
        verdict.is_ssp = false;
        verdict.witness = SspWitness{i, k, t.a(i, k),
                                     WitnessKind::non_positive_entry};
        return verdict;
      }
    }
  }
  verdict.is_ssp = true;
  verdict.constructed_form = construct_shu_osher(t);
  return verdict;
}

/// beta_{ik} = a_{ik} - sum_{j=k+1}^{i-1} alpha_{ij} a_{jk}. No sign
/// requirement is imposed on the result.
inline ShuOsherForm beta_from_alpha(const ButcherTableau& t,
                                    const RaggedArray& alpha) {
  if (static_cast<int>(alpha.size()) != t.stages)
    throw ShapeMismatch("alpha has " + std::to_string(alpha.size()) +
                        " rows, tableau has " + std::to_string(t.stages));
  for (int i = 1; i <= t.stages; ++i)
    if (static_cast<int>(alpha[i - 1].size()) != i)
      throw ShapeMismatch("alpha row " + std::to_string(i) +
                          " must have " + std::to_string(i) + " entries");
  ShuOsherForm f;
  f.stages = t.stages;
  f.alpha = alpha;
  f.beta.resize(alpha.size());
  for (int i = 1; i <= t.stages; ++i) {
    f.beta[i - 1].assign(static_cast<std::size_t>(i), 0.0);
    for (int k = 0; k < i; ++k) {
      double acc = t.a(i, k);
      for (int j = k + 1; j < i; ++j) acc -= alpha[i - 1][j] * t.a(j, k);
      f.beta[i - 1][k] = acc;
    }
  }
  return f;
}

/// Constructive conversion to a nonnegative Shu-Osher form. Requires
/// every coefficient strictly positive. delta is the minimum of
/// a_{ik} / sum_{j=k+1}^{i-1} a_{jk} over pairs with a nonempty sum;
/// rows take the uniform value min{delta/2, 1/(2(i-1))} off the first
/// column, the first column absorbs the rest of the unit row sum, and
/// beta follows from the alpha relation.
inline ShuOsherForm construct_shu_osher(const ButcherTableau& t) {
  for (int i = 1; i <= t.stages; ++i)
    for (int k = 0; k < i; ++k)
      if (t.a(i, k) <= positivity_floor)
        throw PositivityViolated(
            "construct_shu_osher: coefficient a_{" + std::to_string(i) +
            "," + std::to_string(k) + "} = " + std::to_string(t.a(i, k)) +
            " is not positive");

  double delta = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= t.stages; ++i) {
    for (int k = 0; k + 1 < i; ++k) {  // k = i-1 has an empty sum; skip
      double denom = 0.0;
      for (int j = k + 1; j < i; ++j) denom += t.a(j, k);
      delta = std::min(delta, t.a(i, k) / denom);
    }
  }

  RaggedArray alpha(static_cast<std::size_t>(t.stages));
  alpha[0] = {1.0};
  for (int i = 2; i <= t.stages; ++i) {
    const double off = std::min(delta / 2.0, 1.0 / (2.0 * (i - 1)));
    alpha[i - 1].assign(static_cast<std::size_t>(i), off);
    alpha[i - 1][0] = 1.0 - (i - 1) * off;
  }
  return beta_from_alpha(t, alpha);
}

/// Inverse of the beta relation by forward recursion:
/// a_{ik} = beta_{ik} + sum_{j=k+1}^{i-1} alpha_{ij} a_{jk}.
inline ButcherTableau shu_osher_to_butcher(const ShuOsherForm& f) {
  check_shu_osher(f);
  const int s = f.stages;
  RaggedArray a(static_cast<std::size_t>(s));
  for (int i = 1; i <= s; ++i) {
    a[i - 1].assign(static_cast<std::size_t>(i), 0.0);
    for (int k = 0; k < i; ++k) {
      double acc = f.beta[i - 1][k];
      for (int j = k + 1; j < i; ++j) acc += f.alpha[i - 1][j] * a[j - 1][k];
      a[i - 1][k] = acc;
    }
  }
  std::vector<double> b = a.back();
  a.pop_back();
  return make_tableau("", std::move(a), std::move(b));
}

/// Classical rooted-tree order conditions through order 4, checked to
/// 1e-10. Targets above 4 are unsupported.
inline bool verify_order(const ButcherTableau& t, int target) {
  if (target < 1 || target > 4)
    throw Unsupported("verify_order supports targets 1..4, got " +
                      std::to_string(target));
  const int s = t.stages;
  const std::vector<double>& b = t.b();
  // Stage nodes from the coefficient rows; stage 0 has c = 0.
  std::vector<double> c(static_cast<std::size_t>(s), 0.0);
  for (int i = 1; i < s; ++i) {
    double sum = 0.0;
    for (int k = 0; k < i; ++k) sum += t.a(i, k);
    c[i] = sum;
  }
  auto astage = [&](int i, int j) {  // strict stage matrix, 0-based stages
    return (i >= 1 && j < i) ? t.a(i, j) : 0.0;
  };
  auto ac = [&](int i) {  // (A c)_i
    double acc = 0.0;
    for (int j = 0; j < i; ++j) acc += astage(i, j) * c[j];
    return acc;
  };

  const double tol = 1e-10;
  auto holds = [&](double value, double expected) {
    return std::abs(value - expected) <= tol;
  };

  double s1 = 0.0;
  for (int i = 0; i < s; ++i) s1 += b[i];
  if (!holds(s1, 1.0)) return false;
  if (target < 2) return true;

  double s2 = 0.0;
  for (int i = 0; i < s; ++i) s2 += b[i] * c[i];
  if (!holds(s2, 0.5)) return false;
  if (target < 3) return true;

  double s3a = 0.0, s3b = 0.0;
  for (int i = 0; i < s; ++i) {
    s3a += b[i] * c[i] * c[i];
    s3b += b[i] * ac(i);
  }
  if (!holds(s3a, 1.0 / 3.0) || !holds(s3b, 1.0 / 6.0)) return false;
  if (target < 4) return true;

  double s4a = 0.0, s4b = 0.0, s4c = 0.0, s4d = 0.0;
  for (int i = 0; i < s; ++i) {
    s4a += b[i] * c[i] * c[i] * c[i];
    s4b += b[i] * c[i] * ac(i);
    double acc_c2 = 0.0, acc_ac = 0.0;
    for (int j = 0; j < i; ++j) {
      acc_c2 += astage(i, j) * c[j] * c[j];
      acc_ac += astage(i, j) * ac(j);
    }
    s4c += b[i] * acc_c2;
    s4d += b[i] * acc_ac;
  }
  return holds(s4a, 0.25) && holds(s4b, 0.125) && holds(s4c, 1.0 / 12.0) &&
         holds(s4d, 1.0 / 24.0);
}

}  // namespace mbprk
