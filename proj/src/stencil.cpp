#include "isogroup/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "isogroup/error.hpp"
#include "isogroup/isotropy.hpp"

namespace isogroup {
namespace {

double checked_eval(const ScalarField& f, const Vector& x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::string where = "(";
    for (std::size_t i = 0; i < x.size(); ++i) where += (i ? "," : "") + std::to_string(x[i]);
    throw EvaluationError("scalar field is not finite at " + where + ")", x);
  }
  return v;
}

void require_dim(const ScalarField& f, std::span<const double> x, const char* what) {
  if (f.dim != x.size())
    throw DimensionError(std::string(what) + ": field has dimension " + std::to_string(f.dim) +
                         " but point has " + std::to_string(x.size()));
}

Vector shifted(std::span<const double> x, double sign, std::span<const double> d) {
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += sign * d[i];
  return y;
}

void require_member(const SpectralDecomposition& hessian, const Matrix& g, const char* which) {
  if (!is_member(hessian, g, kHessianMemberTol))
    throw PreconditionError(std::string(which) +
                            " is not in the isotropy group of the Hessian (residual " +
                            std::to_string(commutator_residual(hessian.matrix, g)) + ")");
}

bool is_pm_eigenvector(const Matrix& g, std::span<const double> h) {
  const Vector gh = g * h;
  const double hn = norm2(h);
  for (double lambda : {1.0, -1.0}) {
    Vector d(gh);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= lambda * h[i];
    if (norm2(d) <= 1e-8 * hn) return true;
  }
  return false;
}

double probe_value(const ScalarField& f, std::span<const double> x, const Matrix& g1,
                   const Matrix& g2, std::span<const double> h) {
  const Vector d1 = g1 * h;
  const Vector d2 = g2 * h;
  // grouped so that swapping g1 and g2 negates the result bit for bit
  const double first = checked_eval(f, shifted(x, 1.0, d1)) + checked_eval(f, shifted(x, -1.0, d1));
  const double second = checked_eval(f, shifted(x, 1.0, d2)) + checked_eval(f, shifted(x, -1.0, d2));
  return first - second;
}

}  // namespace

double default_hessian_step(std::span<const double> x) {
  return 1e-4 * std::max(1.0, norm2(x));
}

SymMatrix hessian_fd(const ScalarField& f, std::span<const double> x,
                     std::optional<double> step) {
  require_dim(f, x, "hessian_fd");
  const double s = step ? *step : default_hessian_step(x);
  if (!(s > 0.0)) throw ArgumentError("hessian_fd: step must be positive");
  const std::size_t n = x.size();
  Matrix h(n, n);
  Vector p(x.begin(), x.end());
  auto at = [&](std::size_t i, double si, std::size_t j, double sj) {
    p.assign(x.begin(), x.end());
    p[i] += si * s;
    p[j] += sj * s;
    return checked_eval(f, p);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) /
                (4.0 * s * s);
  return SymMatrix(0.5 * (h + h.transpose()));
}

SpectralDecomposition hessian_symmetry(const ScalarField& f, std::span<const double> x) {
  return eig_sym(hessian_fd(f, x));
}

double second_diff(const ScalarField& f, std::span<const double> x, const Matrix& gamma,
                   std::span<const double> h) {
  return second_diff(f, hessian_symmetry(f, x), x, gamma, h);
}

double second_diff(const ScalarField& f, const SpectralDecomposition& hessian,
                   std::span<const double> x, const Matrix& gamma, std::span<const double> h) {
  require_dim(f, x, "second_diff");
  require_member(hessian, gamma, "gamma");
  const Vector d = gamma * h;
  const Vector center(x.begin(), x.end());
  return checked_eval(f, shifted(x, 1.0, d)) - 2.0 * checked_eval(f, center) +
         checked_eval(f, shifted(x, -1.0, d));
}

StencilProbe fourth_order_probe(const ScalarField& f, std::span<const double> x,
                                const Matrix& g1, const Matrix& g2, std::span<const double> h) {
  return fourth_order_probe(f, hessian_symmetry(f, x), x, g1, g2, h);
}

StencilProbe fourth_order_probe(const ScalarField& f, const SpectralDecomposition& hessian,
                                std::span<const double> x, const Matrix& g1, const Matrix& g2,
                                std::span<const double> h) {
  require_dim(f, x, "fourth_order_probe");
  require_member(hessian, g1, "gamma1");
  require_member(hessian, g2, "gamma2");

  StencilProbe probe{Vector(x.begin(), x.end()), g1, g2, Vector(h.begin(), h.end()), 0.0, {}};
  const double n = static_cast<double>(x.size());
  if (frobenius_norm(g1 - g2) <= 1e-10 * n || frobenius_norm(g1 + g2) <= 1e-10 * n)
    probe.warnings.emplace_back("gamma1 = +-gamma2: the probe carries no information");
  if (is_pm_eigenvector(g1, h))
    probe.warnings.emplace_back("h is an eigenvector of gamma1");
  if (is_pm_eigenvector(g2, h))
    probe.warnings.emplace_back("h is an eigenvector of gamma2");
  probe.value = probe_value(f, x, g1, g2, h);
  return probe;
}

double order_fit(const ScalarField& f, std::span<const double> x, const Matrix& g1,
                 const Matrix& g2, std::span<const double> h, int levels) {
  if (levels < 3) throw ArgumentError("order_fit needs at least 3 levels");
  const auto hessian = hessian_symmetry(f, x);
  Vector scaled(h.begin(), h.end());
  std::vector<double> log_h;
  std::vector<double> log_s;
  for (int level = 0; level < levels; ++level) {
    const double s = fourth_order_probe(f, hessian, x, g1, g2, scaled).value;
    if (std::abs(s) < 1e-14)
      throw DegenerateProbeError("probe value " + std::to_string(s) + " at level " +
                                 std::to_string(level) +
                                 " is below 1e-14; try a larger h");
    log_h.push_back(std::log(norm2(scaled)));
    log_s.push_back(std::log(std::abs(s)));
    for (double& c : scaled) c *= 0.5;
  }
  const double k = static_cast<double>(levels);
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < levels; ++i) {
    mx += log_h[i] / k;
    my += log_s[i] / k;
  }
  double sxy = 0.0, sxx = 0.0;
  for (int i = 0; i < levels; ++i) {
    sxy += (log_h[i] - mx) * (log_s[i] - my);
    sxx += (log_h[i] - mx) * (log_h[i] - mx);
  }
  return sxy / sxx;
}

Matrix reflection(std::span<const double> u) {
  const std::size_t n = u.size();
  const double len2 = dot(u, u);
  if (len2 == 0.0) throw ArgumentError("reflection axis must be non-zero");
  Matrix r = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= 2.0 * u[i] * u[j] / len2;
  return r;
}

ScalarField taylor_example_field() {
  return {3, [](std::span<const double> x) {
            const double x1 = x[0], x2 = x[1], x3 = x[2];
            return x1 * x2 * x3 * x3 + x1 * x1 - 3.0 * x2 * x2 + x2 * std::sin(x1) -
                   x2 * x2 * x3 * x3;
          }};
}

namespace {

const std::map<std::string, ScalarField (*)()>& registry() {
  static const std::map<std::string, ScalarField (*)()> fields = {
      {"paper-6-3", &taylor_example_field},
      {"quadratic-3", +[]() -> ScalarField {
         return {3, [](std::span<const double> x) {
                   return x[0] * x[0] + 2.0 * x[1] * x[1] + 3.0 * x[2] * x[2] + x[0] * x[1];
                 }};
       }},
  };
  return fields;
}

}  // namespace

std::optional<ScalarField> builtin_field(const std::string& name) {
  const auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) return std::nullopt;
  return it->second();
}

std::vector<std::string> builtin_field_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

}  // namespace isogroup
