#include "isogroup/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isogroup/error.hpp"

namespace isogroup {
namespace {

Vector project(const Matrix& basis, std::span<const double> x) {
  Vector p(x.size(), 0.0);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    const double c = dot(basis.row(r), x);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += c * basis(r, i);
  }
  return p;
}

double distance_to_round_sphere(const Matrix& basis, double radius, std::span<const double> x) {
  const Vector p = project(basis, x);
  Vector off(x.begin(), x.end());
  for (std::size_t i = 0; i < off.size(); ++i) off[i] -= p[i];
  const double radial = norm2(p) - radius;
  return std::sqrt(dot(off, off) + radial * radial);
}

Matrix rows_of(const SpectralDecomposition& dec, std::size_t offset, std::size_t m) {
  Matrix b(m, dec.size());
  for (std::size_t r = 0; r < m; ++r)
    std::copy(dec.vectors.row(offset + r).begin(), dec.vectors.row(offset + r).end(),
              b.row(r).begin());
  return b;
}

}  // namespace

SymMatrix guiding_matrix(double mu) {
  const double c = 2.0 * mu - 1.0;
  const double r = std::numbers::sqrt2 * c;
  return SymMatrix(Matrix{{2.0, r, r}, {r, 3.0 - 2.0 * mu, c}, {r, c, 3.0 - 2.0 * mu}});
}

std::pair<double, double> guiding_spectrum(double mu) { return {4.0 * mu, 4.0 * (1.0 - mu)}; }

Matrix guiding_swap() { return Matrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}; }

Vector rhs(const Matrix& a, std::span<const double> x) {
  Vector f = a * x;
  const double r2 = dot(x, x);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= r2 * x[i];
  return f;
}

Vector rhs(std::span<const double> x, double mu) {
  if (x.size() != 3) throw DimensionError("guiding system state must have 3 components");
  return rhs(guiding_matrix(mu).matrix(), x);
}

std::string to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Origin: return "origin";
    case ComponentKind::PointPair: return "point-pair";
    case ComponentKind::Circle: return "circle";
    case ComponentKind::Sphere: return "sphere";
  }
  return "unknown";
}

ComponentKind kind_of(const EquilibriumComponent& c) {
  return static_cast<ComponentKind>(c.index());
}

double radius_of(const EquilibriumComponent& c) {
  return std::visit(
      [](const auto& comp) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(comp)>, Origin>)
          return 0.0;
        else
          return comp.radius;
      },
      c);
}

double distance_to(const EquilibriumComponent& c, std::span<const double> x) {
  if (std::holds_alternative<Origin>(c)) return norm2(x);
  if (const auto* pp = std::get_if<PointPair>(&c)) {
    Vector plus(x.begin(), x.end());
    Vector minus(x.begin(), x.end());
    for (std::size_t i = 0; i < plus.size(); ++i) {
      plus[i] -= pp->radius * pp->direction[i];
      minus[i] += pp->radius * pp->direction[i];
    }
    return std::min(norm2(plus), norm2(minus));
  }
  if (const auto* circle = std::get_if<Circle>(&c))
    return distance_to_round_sphere(circle->basis, circle->radius, x);
  const auto& sphere = std::get<Sphere>(c);
  return distance_to_round_sphere(sphere.basis, sphere.radius, x);
}

std::vector<Vector> sample_points(const EquilibriumComponent& c, std::size_t n, std::size_t k) {
  std::vector<Vector> pts;
  if (std::holds_alternative<Origin>(c)) {
    pts.emplace_back(n, 0.0);
  } else if (const auto* pp = std::get_if<PointPair>(&c)) {
    Vector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = pp->radius * pp->direction[i];
    pts.push_back(p);
    for (double& v : p) v = -v;
    pts.push_back(p);
  } else if (const auto* circle = std::get_if<Circle>(&c)) {
    for (std::size_t j = 0; j < k; ++j) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
      Vector p(n);
      for (std::size_t i = 0; i < n; ++i)
        p[i] = circle->radius * (std::cos(t) * circle->basis(0, i) +
                                 std::sin(t) * circle->basis(1, i));
      pts.push_back(std::move(p));
    }
  } else {
    const auto& sphere = std::get<Sphere>(c);
    const std::size_t m = sphere.basis.rows();
    // +-b_a and (b_a +- b_b)/sqrt 2
    for (std::size_t a = 0; a < m; ++a) {
      for (double s : {1.0, -1.0}) {
        Vector p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = s * sphere.radius * sphere.basis(a, i);
        pts.push_back(std::move(p));
      }
      for (std::size_t b = a + 1; b < m; ++b)
        for (double s : {1.0, -1.0}) {
          Vector p(n);
          for (std::size_t i = 0; i < n; ++i)
            p[i] = sphere.radius * (sphere.basis(a, i) + s * sphere.basis(b, i)) /
                   std::numbers::sqrt2;
          pts.push_back(std::move(p));
        }
    }
  }
  return pts;
}

std::vector<ComponentKind> EquilibriumSet::kinds() const {
  std::vector<ComponentKind> k;
  for (const auto& c : components) k.push_back(kind_of(c));
  return k;
}

double EquilibriumSet::distance(std::span<const double> x) const {
  double best = INFINITY;
  for (const auto& c : components) best = std::min(best, distance_to(c, x));
  return best;
}

std::vector<Vector> EquilibriumSet::sample_points(std::size_t k) const {
  std::vector<Vector> pts;
  for (const auto& c : components) {
    auto p = isogroup::sample_points(c, dim, k);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  return pts;
}

EquilibriumSet equilibria(const SymMatrix& a) {
  const auto dec = eig_sym(a);
  EquilibriumSet set{a.size(), {Origin{}}};
  for (std::size_t k = 0; k < dec.clusters.size(); ++k) {
    const auto [lambda, m] = dec.clusters[k];
    if (lambda <= dec.cluster_tol) continue;
    const double radius = std::sqrt(lambda);
    const std::size_t offset = dec.cluster_offset(k);
    if (m == 1) {
      const auto row = dec.vectors.row(offset);
      set.components.emplace_back(PointPair{Vector(row.begin(), row.end()), radius, lambda});
    } else if (m == 2) {
      set.components.emplace_back(Circle{rows_of(dec, offset, 2), radius, lambda});
    } else {
      set.components.emplace_back(Sphere{rows_of(dec, offset, m), radius, lambda});
    }
  }
  return set;
}

EquilibriumSet equilibria(double mu) { return equilibria(guiding_matrix(mu)); }

Trajectory integrate(std::span<const double> x0, double mu, double dt, std::size_t steps) {
  if (x0.size() != 3) throw DimensionError("guiding system state must have 3 components");
  if (!(dt > 0.0)) throw ArgumentError("integrate: dt must be positive");
  if (steps < 1) throw ArgumentError("integrate: steps must be at least 1");
  const Matrix a = guiding_matrix(mu).matrix();
  Trajectory traj;
  traj.reserve(steps + 1);
  traj.emplace_back(x0.begin(), x0.end());

  Vector x(x0.begin(), x0.end());
  Vector tmp(3);
  auto axpy = [&](const Vector& k, double s) {
    for (std::size_t i = 0; i < 3; ++i) tmp[i] = x[i] + s * k[i];
    return tmp;
  };
  for (std::size_t step = 1; step <= steps; ++step) {
    const Vector k1 = rhs(a, x);
    const Vector k2 = rhs(a, axpy(k1, 0.5 * dt));
    const Vector k3 = rhs(a, axpy(k2, 0.5 * dt));
    const Vector k4 = rhs(a, axpy(k3, dt));
    for (std::size_t i = 0; i < 3; ++i)
      x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }))
      throw DivergenceError("trajectory diverged at step " + std::to_string(step), step);
    traj.push_back(x);
  }
  return traj;
}

std::vector<SweepRow> sweep(double mu_from, double mu_to, std::size_t samples) {
  if (samples < 2) throw ArgumentError("sweep needs at least 2 samples");
  std::vector<SweepRow> rows(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    SweepRow& row = rows[i];
    row.mu = mu_from + (mu_to - mu_from) * static_cast<double>(i) /
                           static_cast<double>(samples - 1);
    const auto a = guiding_matrix(row.mu);
    row.lambdas = eig_sym(a).lambdas;
    for (const auto& c : equilibria(a).components)
      row.components.emplace_back(kind_of(c), radius_of(c));
  }
  auto inventory = [](const SweepRow& r) {
    std::vector<ComponentKind> k;
    for (const auto& [kind, _] : r.components) k.push_back(kind);
    std::sort(k.begin(), k.end());
    return k;
  };
  for (std::size_t i = 1; i < samples; ++i)
    rows[i].transition = inventory(rows[i]) != inventory(rows[i - 1]);
  return rows;
}

}  // namespace isogroup
