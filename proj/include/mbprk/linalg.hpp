#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mbprk/errors.hpp"

namespace mbprk {

/// Dense square matrix, row-major storage.
struct SquareMatrix {
  int n = 0;
  std::vector<double> data;

  SquareMatrix() = default;
  explicit SquareMatrix(int dim)
      : n(dim), data(static_cast<std::size_t>(dim) * dim, 0.0) {}

  double& operator()(int i, int j) {
    return data[static_cast<std::size_t>(i) * n + j];
  }
  double operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * n + j];
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i][j] = (*this)(i, j);
    return out;
  }
};

inline SquareMatrix symmetric_part(const SquareMatrix& m) {
  SquareMatrix s(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

inline double frobenius_norm(const SquareMatrix& m) {
  double acc = 0.0;
  for (double v : m.data) acc += v * v;
  return std::sqrt(acc);
}

inline double max_asymmetry(const SquareMatrix& m) {
  double worst = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

namespace detail {

inline double off_diagonal_norm(const SquareMatrix& m) {
  double acc = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (i != j) acc += m(i, j) * m(i, j);
  return std::sqrt(acc);
}

}  // namespace detail

/// Smallest eigenvalue of a small symmetric matrix by cyclic Jacobi
/// rotations. Input must be symmetric to 1e-12 and at most 16x16; the
/// returned value is accurate to well below 1e-10 for matrices of
/// moderate norm.
inline double smallest_eigenvalue(const SquareMatrix& m) {
  if (m.n < 1) throw Unsupported("smallest_eigenvalue: empty matrix");
  if (m.n > 16)
    throw Unsupported("smallest_eigenvalue: dimension " +
                      std::to_string(m.n) + " exceeds 16");
  if (max_asymmetry(m) > 1e-12)
    throw NotSymmetric("smallest_eigenvalue: matrix is not symmetric "
                       "(max |A_ij - A_ji| = " +
                       std::to_string(max_asymmetry(m)) + ")");
  if (m.n == 1) return m(0, 0);

  SquareMatrix a = symmetric_part(m);  // scrub round-off asymmetry
  const double stop = 1e-13 * std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (detail::off_diagonal_norm(a) <= stop) break;
    for (int p = 0; p < a.n - 1; ++p) {
      for (int q = p + 1; q < a.n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < a.n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
      }
    }
  }

  double lambda = a(0, 0);
  for (int i = 1; i < a.n; ++i) lambda = std::min(lambda, a(i, i));
  return lambda;
}

}  // namespace mbprk
