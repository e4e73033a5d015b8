#pragma once

// Test-only oracles. Nothing here calls into the eigensolver or the
// samplers under test.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isogroup/fixture_suite.hpp"
#include "isogroup/io.hpp"
#include "isogroup/matrix.hpp"

namespace support {

using isogroup::Matrix;
using isogroup::Vector;
using Engine = std::mt19937_64;

inline constexpr std::uint64_t kMasterSeed = 0x5eed'2024'0917ULL;

inline Matrix fixture(const std::string& name) {
  return isogroup::read_matrix(isogroup::default_fixture_dir() / name);
}

inline double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Modified Gram-Schmidt on uniform random columns; orthogonal, not Haar.
inline Matrix random_orthogonal(std::size_t n, Engine& rng) {
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector v(n);
    for (;;) {
      for (auto& e : v) e = uniform(rng, -1.0, 1.0);
      for (std::size_t k = 0; k < j; ++k) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += q(i, k) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * q(i, k);
      }
      double norm = 0.0;
      for (double e : v) norm += e * e;
      norm = std::sqrt(norm);
      if (norm > 1e-3) {
        for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
        break;
      }
    }
  }
  return q;
}

inline Matrix random_symmetric_uniform(std::size_t n, Engine& rng) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = uniform(rng, -1.0, 1.0);
  return a;
}

/// Q diag(lambdas) Q^T.
inline Matrix planted(std::span<const double> lambdas, const Matrix& q) {
  const std::size_t n = lambdas.size();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * lambdas[k] * q(j, k);
      a(i, j) = s;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  return a;
}

/// Gaussian elimination with partial pivoting; empty when singular.
inline std::optional<Vector> solve_linear(Matrix m, Vector b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
    if (std::abs(m(p, c)) < 1e-300) return std::nullopt;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      std::swap(b[p], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
      b[r] -= f * b[c];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m(i, k) * x[k];
    x[i] = s / m(i, i);
  }
  return x;
}

/// F(x) = A x - |x|^2 x.
inline Vector cubic_field(const Matrix& a, std::span<const double> x) {
  const std::size_t n = x.size();
  double r2 = 0.0;
  for (double e : x) r2 += e * e;
  Vector f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
    f[i] = s - r2 * x[i];
  }
  return f;
}

inline double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

/// Levenberg-Marquardt on F(x) = 0 with Jacobian A - |x|^2 I - 2 x x^T.
/// Returns the root when |F| <= tol is reached.
inline std::optional<Vector> newton_equilibrium(const Matrix& a, Vector x, double tol = 1e-12,
                                                int max_iter = 500) {
  const std::size_t n = x.size();
  double damping = 1e-3;
  Vector f = cubic_field(a, x);
  for (int it = 0; it < max_iter; ++it) {
    if (euclid(f) <= tol) return x;
    double r2 = 0.0;
    for (double e : x) r2 += e * e;
    Matrix j(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) j(r, c) = a(r, c) - 2.0 * x[r] * x[c] - (r == c ? r2 : 0.0);
    Matrix jtj(n, n);
    Vector g(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += j(k, r) * j(k, c);
        jtj(r, c) = s;
      }
      for (std::size_t k = 0; k < n; ++k) g[r] -= j(k, r) * f[k];
    }
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Matrix m = jtj;
      for (std::size_t r = 0; r < n; ++r) m(r, r) += damping;
      auto step = solve_linear(m, g);
      if (!step) {
        damping *= 10.0;
        continue;
      }
      Vector trial = x;
      for (std::size_t r = 0; r < n; ++r) trial[r] += (*step)[r];
      Vector ft = cubic_field(a, trial);
      if (euclid(ft) < euclid(f)) {
        x = std::move(trial);
        f = std::move(ft);
        damping = std::max(damping * 0.3, 1e-15);
        improved = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!improved) break;
  }
  return euclid(f) <= tol ? std::optional<Vector>(x) : std::nullopt;
}

/// Real roots of a monic cubic l^3 + b l^2 + c l + d by the trigonometric
/// method (three real roots assumed), ascending.
inline std::vector<double> cubic_roots(double b, double c, double d) {
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  std::vector<double> roots;
  if (std::abs(p) < 1e-14) {
    roots.assign(3, std::cbrt(-q) - b / 3.0);
    return roots;
  }
  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  for (int k = 0; k < 3; ++k)
    roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Eigenvalues of a symmetric 3x3 matrix from its characteristic polynomial.
inline std::vector<double> eigenvalues_3x3(const Matrix& a) {
  const double tr = a(0, 0) + a(1, 1) + a(2, 2);
  const double minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) -
                        a(0, 2) * a(2, 0) + a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  return cubic_roots(-tr, minors, -det);
}

/// Every permutation of {0..n-1} in lexicographic order (n! of them).
inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace support
