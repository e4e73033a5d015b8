#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "isogroup/matrix.hpp"
#include "isogroup/spectral.hpp"

namespace isogroup {

// The guiding system  x' = A(mu) x - |x|^2 x  on R^3, with
//
//          [ 2            r2 (2mu-1)   r2 (2mu-1) ]
//  A(mu) = [ r2 (2mu-1)   3 - 2mu      2mu - 1    ]      r2 = sqrt(2)
//          [ r2 (2mu-1)   2mu - 1      3 - 2mu    ]
//
// Nonzero equilibria are exactly the eigenvectors of positive eigenvalues
// lambda scaled to |x|^2 = lambda, so the equilibrium set is read off the
// clustered spectrum.

SymMatrix guiding_matrix(double mu);

/// Closed-form spectrum: (4 mu, 4 (1 - mu)), the second one double.
std::pair<double, double> guiding_spectrum(double mu);

/// The coordinate swap x2 <-> x3, which commutes with A(mu) for every mu.
Matrix guiding_swap();

Vector rhs(const Matrix& a, std::span<const double> x);
Vector rhs(std::span<const double> x, double mu);

enum class ComponentKind { Origin, PointPair, Circle, Sphere };
std::string to_string(ComponentKind kind);

struct Origin {};
struct PointPair {
  Vector direction;  ///< unit vector; the equilibria are +-radius * direction
  double radius = 0.0;
  double eigenvalue = 0.0;
};
struct Circle {
  Matrix basis;  ///< 2 x n, orthonormal rows spanning the plane
  double radius = 0.0;
  double eigenvalue = 0.0;
};
/// Round sphere in an eigenspace of dimension >= 3.
struct Sphere {
  Matrix basis;  ///< m x n, orthonormal rows
  double radius = 0.0;
  double eigenvalue = 0.0;
};

using EquilibriumComponent = std::variant<Origin, PointPair, Circle, Sphere>;

ComponentKind kind_of(const EquilibriumComponent& c);
/// 0 for the origin.
double radius_of(const EquilibriumComponent& c);
/// Euclidean distance from x to the component.
double distance_to(const EquilibriumComponent& c, std::span<const double> x);
/// Deterministic points on the component (k of them on circles).
std::vector<Vector> sample_points(const EquilibriumComponent& c, std::size_t n, std::size_t k);

struct EquilibriumSet {
  std::size_t dim = 0;
  std::vector<EquilibriumComponent> components;

  std::vector<ComponentKind> kinds() const;
  double distance(std::span<const double> x) const;
  std::vector<Vector> sample_points(std::size_t k) const;
};

/// Origin plus one component per positive eigenvalue cluster: multiplicity
/// 1 gives a point pair, 2 a circle, 3 or more a sphere, each of radius
/// sqrt(lambda). Eigenvalues within the cluster tolerance of zero add
/// nothing.
EquilibriumSet equilibria(const SymMatrix& a);
EquilibriumSet equilibria(double mu);

using Trajectory = std::vector<Vector>;

/// Classical fixed-step RK4 on the guiding system; returns steps + 1
/// states including x0. Throws DivergenceError with the step index when
/// the state stops being finite.
Trajectory integrate(std::span<const double> x0, double mu, double dt = 1e-2,
                     std::size_t steps = 10000);

struct SweepRow {
  double mu = 0.0;
  Vector lambdas;
  std::vector<std::pair<ComponentKind, double>> components;  ///< (kind, radius)
  bool transition = false;  ///< kind inventory differs from the previous row
};

/// mu_i = from + (to - from) i / (samples - 1), i = 0 .. samples-1.
std::vector<SweepRow> sweep(double mu_from, double mu_to, std::size_t samples);

}  // namespace isogroup
