#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isogroup/matrix.hpp"
#include "isogroup/spectral.hpp"

namespace isogroup {

/// Pure scalar function on R^n.
struct ScalarField {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> eval;

  double operator()(std::span<const double> x) const { return eval(x); }
};

/// Membership tolerance for Hessian isotropy: the finite-difference Hessian
/// is only accurate to about 1e-6.
inline constexpr double kHessianMemberTol = 1e-6;

/// f(x + g1 h) + f(x - g1 h) - f(x + g2 h) - f(x - g2 h) and its inputs.
struct StencilProbe {
  Vector base_point;
  Matrix gamma1;
  Matrix gamma2;
  Vector h;
  double value = 0.0;
  std::vector<std::string> warnings;
};

/// 1e-4 * max(1, ||x||).
double default_hessian_step(std::span<const double> x);

/// Central second differences
///   H_ij = [f(x+s e_i+s e_j) - f(x+s e_i-s e_j) - f(x-s e_i+s e_j) + f(x-s e_i-s e_j)] / 4s^2,
/// symmetrised. Throws EvaluationError on a non-finite evaluation.
SymMatrix hessian_fd(const ScalarField& f, std::span<const double> x,
                     std::optional<double> step = std::nullopt);

/// eig_sym of the finite-difference Hessian at x.
SpectralDecomposition hessian_symmetry(const ScalarField& f, std::span<const double> x);

/// f(x + g h) - 2 f(x) + f(x - g h). Throws PreconditionError unless g is in
/// the isotropy group of the Hessian at x (tol kHessianMemberTol).
double second_diff(const ScalarField& f, std::span<const double> x, const Matrix& gamma,
                   std::span<const double> h);
double second_diff(const ScalarField& f, const SpectralDecomposition& hessian,
                   std::span<const double> x, const Matrix& gamma, std::span<const double> h);

/// Four-point probe whose value is O(||h||^4). Warns (does not throw) when
/// g1 = +-g2 or h is an eigenvector of either gamma for eigenvalue +-1.
StencilProbe fourth_order_probe(const ScalarField& f, std::span<const double> x,
                                const Matrix& g1, const Matrix& g2, std::span<const double> h);
StencilProbe fourth_order_probe(const ScalarField& f, const SpectralDecomposition& hessian,
                                std::span<const double> x, const Matrix& g1, const Matrix& g2,
                                std::span<const double> h);

/// Least-squares slope of log|s| against log||h|| over h, h/2, ...,
/// h/2^(levels-1). Throws ArgumentError for levels < 3 and
/// DegenerateProbeError when some |s| < 1e-14.
double order_fit(const ScalarField& f, std::span<const double> x, const Matrix& g1,
                 const Matrix& g2, std::span<const double> h, int levels = 5);

/// Reflection I - 2 u u^T across the unit vector u.
Matrix reflection(std::span<const double> u);

/// f(x1,x2,x3) = x1 x2 x3^2 + x1^2 - 3 x2^2 + x2 sin(x1) - x2^2 x3^2, the
/// reference field for the Taylor probe (registered as "paper-6-3").
ScalarField taylor_example_field();

/// Registered named fields; empty when the name is unknown.
std::optional<ScalarField> builtin_field(const std::string& name);
std::vector<std::string> builtin_field_names();

}  // namespace isogroup
