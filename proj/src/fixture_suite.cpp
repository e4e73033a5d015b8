#include "isogroup/fixture_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "isogroup/dynsys.hpp"
#include "isogroup/error.hpp"
#include "isogroup/graphsym.hpp"
#include "isogroup/io.hpp"
#include "isogroup/isotropy.hpp"
#include "isogroup/spectral.hpp"
#include "isogroup/stencil.hpp"

#ifndef ISOGROUP_FIXTURE_DIR
#define ISOGROUP_FIXTURE_DIR "fixtures"
#endif

namespace isogroup {
namespace {

constexpr double kReferenceTol = 1e-3;  // reference matrices carry 4 decimals

double max_abs(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

FixtureCheck at_most(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

FixtureCheck holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)};
}

std::string join(const std::vector<std::size_t>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return "(" + s + ")";
}

// Worst nearest-element distance of the reference gamma_1..4 and negatives.
std::pair<double, int> match_reference_gamma2(const std::vector<IsotropyElement>& set,
                                            const std::vector<Matrix>& reference) {
  double worst = 0.0;
  int matched = 0;
  for (const auto& g : reference) {
    for (double sign : {1.0, -1.0}) {
      const double d = nearest_element(set, sign * g).second;
      worst = std::max(worst, d);
      if (d <= kReferenceTol) ++matched;
    }
  }
  return {worst, matched};
}

}  // namespace

std::filesystem::path default_fixture_dir() { return ISOGROUP_FIXTURE_DIR; }

std::vector<FixtureCheck> verify_fixtures(const std::filesystem::path& dir) {
  std::vector<FixtureCheck> out;
  auto run = [&](const std::string& name, const std::function<FixtureCheck()>& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, INFINITY, 0.0, std::string("error: ") + e.what()});
    }
  };
  auto file = [&](const char* f) { return read_matrix(dir / f); };

  // guiding example
  run("guiding matrix at mu=0 matches fixture", [&] {
    return at_most("guiding matrix at mu=0 matches fixture",
                   max_abs_diff(guiding_matrix(0.0).matrix(), file("guiding_A0.txt")), 1e-15);
  });
  run("guiding matrix at mu=-0.25 matches fixture", [&] {
    return at_most("guiding matrix at mu=-0.25 matches fixture",
                   max_abs_diff(guiding_matrix(-0.25).matrix(), file("guiding_A_m025.txt")),
                   1e-15);
  });
  run("A(0) passes the symmetry check", [&] {
    return holds("A(0) passes the symmetry check", check_symmetric(file("guiding_A0.txt")));
  });
  run("eig A(0) = (0, 4, 4)", [&] {
    const auto l = eig_sym(SymMatrix(file("guiding_A0.txt"))).lambdas;
    const double want[] = {0.0, 4.0, 4.0};
    return at_most("eig A(0) = (0, 4, 4)", max_abs(l, want), 1e-8);
  });
  run("eig A(-0.25) = (-1, 5, 5), m = (1,2)", [&] {
    const auto dec = eig_sym(SymMatrix(file("guiding_A_m025.txt")));
    const double want[] = {-1.0, 5.0, 5.0};
    const bool m_ok = dec.multiplicities() == std::vector<std::size_t>{1, 2};
    return FixtureCheck{"eig A(-0.25) = (-1, 5, 5), m = (1,2)",
                        m_ok && max_abs(dec.lambdas, want) <= 1e-8, max_abs(dec.lambdas, want),
                        1e-8, "m = " + join(dec.multiplicities())};
  });
  run("eig A(0.5) = (2, 2, 2)", [&] {
    const double want[] = {2.0, 2.0, 2.0};
    return at_most("eig A(0.5) = (2, 2, 2)", max_abs(eig_sym(guiding_matrix(0.5)).lambdas, want),
                   1e-8);
  });
  run("cluster (0,4,4) -> m = (1,2)", [&] {
    const double l[] = {0.0, 4.0, 4.0};
    return holds("cluster (0,4,4) -> m = (1,2)",
                 cluster_eigenvalues(l, 1e-8) == std::vector<std::size_t>{1, 2});
  });
  run("closed-form spectrum at mu = 0, -0.25, 0.5", [&] {
    double worst = 0.0;
    for (double mu : {0.0, -0.25, 0.5}) {
      const auto [l1, l2] = guiding_spectrum(mu);
      auto l = eig_sym(guiding_matrix(mu)).lambdas;
      std::vector<double> want{l1, l2, l2};
      std::sort(want.begin(), want.end());
      worst = std::max(worst, max_abs(l, want));
    }
    return at_most("closed-form spectrum at mu = 0, -0.25, 0.5", worst, 1e-8);
  });

  // sign group of A(0)
  std::vector<Matrix> reference;
  for (const char* f : {"a0_reference_gamma1.txt", "a0_reference_gamma2.txt", "a0_reference_gamma3.txt",
                        "a0_reference_gamma4.txt"}) {
    try {
      reference.push_back(file(f));
    } catch (const std::exception&) {
    }
  }
  run("reference basis: a sign pattern reproduces gamma_3", [&] {
    const auto dec = from_basis(SymMatrix(file("guiding_A0.txt")), file("a0_reference_basis.txt"),
                                1e-3);
    double best = INFINITY;
    for (std::uint64_t code = 0; code < 8; ++code) {
      auto g = conjugate(dec, BlockOrthogonal::from_signs(SignPattern::from_code(code, 3),
                                                          dec.multiplicities()));
      best = std::min(best, max_abs_diff(g.gamma, file("a0_reference_gamma3.txt")));
    }
    return at_most("reference basis: a sign pattern reproduces gamma_3", best, kReferenceTol);
  });
  run("reference basis: Gamma_2 contains all 8 reference elements", [&] {
    const auto dec = from_basis(SymMatrix(file("guiding_A0.txt")), file("a0_reference_basis.txt"),
                                1e-3);
    const auto [worst, matched] = match_reference_gamma2(gamma2_elements(dec), reference);
    return at_most("reference basis: Gamma_2 contains all 8 reference elements", worst, kReferenceTol,
                   std::to_string(matched) + "/8 matched");
  });
  run("Jacobi basis: Gamma_2 contains all 8 reference elements", [&] {
    const auto dec = eig_sym(SymMatrix(file("guiding_A0.txt")));
    const auto [worst, matched] = match_reference_gamma2(gamma2_elements(dec), reference);
    return at_most("Jacobi basis: Gamma_2 contains all 8 reference elements", worst, kReferenceTol,
                   std::to_string(matched) +
                       "/8 matched; gamma_2, gamma_4 depend on the basis chosen inside the "
                       "double eigenspace");
  });
  run("kernel vector flipped by a Gamma_2 element", [&] {
    const auto dec = eig_sym(SymMatrix(file("guiding_A0.txt")));
    const double v[] = {1.0 / std::numbers::sqrt2, 0.5, 0.5};
    double best = INFINITY;
    for (const auto& g : gamma2_elements(dec)) {
      Vector gv = g.gamma * v;
      for (std::size_t i = 0; i < 3; ++i) gv[i] += v[i];
      best = std::min(best, norm2(gv));
    }
    return at_most("kernel vector flipped by a Gamma_2 element", best, 1e-6);
  });
  run("swap S commutes with A(0)", [&] {
    return at_most("swap S commutes with A(0)",
                   commutator_residual(file("guiding_A0.txt"), file("guiding_S.txt")), 1e-14);
  });
  run("swap S is a member of Gamma(A(0))", [&] {
    const auto dec = eig_sym(SymMatrix(file("guiding_A0.txt")));
    return holds("swap S is a member of Gamma(A(0))", is_member(dec, file("guiding_S.txt"), 1e-8));
  });
  run("Gamma(A(-0.25)) is infinite", [&] {
    return holds("Gamma(A(-0.25)) is infinite",
                 !is_finite(eig_sym(SymMatrix(file("guiding_A_m025.txt")))));
  });
  run("reference rotation R is in Gamma(A(-0.25))", [&] {
    const auto dec = eig_sym(SymMatrix(file("guiding_A_m025.txt")));
    return holds("reference rotation R is in Gamma(A(-0.25))",
                 is_member(dec, file("guiding_R_m025.txt"), kReferenceTol));
  });

  // 16 x 16 D4 family
  run("D4 matrix: 8 simple and 4 double eigenvalues", [&] {
    const auto dec = eig_sym(SymMatrix(file("d4_A0.txt")), 1e-8);
    const auto m = dec.multiplicities();
    const auto ones = std::count(m.begin(), m.end(), 1);
    const auto twos = std::count(m.begin(), m.end(), 2);
    return holds("D4 matrix: 8 simple and 4 double eigenvalues",
                 ones == 8 && twos == 4 && m.size() == 12 && !is_finite(dec), "m = " + join(m));
  });
  run("D4 generators R, S commute with A(0)", [&] {
    const Matrix a = file("d4_A0.txt");
    return at_most("D4 generators R, S commute with A(0)",
                   std::max(commutator_residual(a, file("d4_R.txt")),
                            commutator_residual(a, file("d4_S.txt"))),
                   1e-10);
  });
  run("D4 hidden symmetry gamma_1 is a member", [&] {
    const auto dec = eig_sym(SymMatrix(file("d4_A0.txt")));
    return holds("D4 hidden symmetry gamma_1 is a member",
                 is_member(dec, file("d4_gamma1.txt"), 1e-8) &&
                     is_member(dec, file("d4_R.txt"), 1e-8) &&
                     is_member(dec, file("d4_S.txt"), 1e-8));
  });

  // asymmetric graph
  run("asymmetric graph: spectrum to 2 decimals", [&] {
    const auto g = Graph::from_adjacency(file("asymmetric_graph.txt"));
    const auto dec = eig_sym(g.adjacency_sym());
    const double want[] = {-2.24, -1.66, -0.83, 0.0, 0.74, 1.29, 2.70};
    double worst = 0.0;
    for (std::size_t k = 0; k < dec.clusters.size() && k < 7; ++k)
      worst = std::max(worst, std::abs(dec.clusters[k].value - want[k]));
    const bool m_ok = dec.multiplicities() == std::vector<std::size_t>{1, 1, 1, 2, 1, 1, 1};
    return FixtureCheck{"asymmetric graph: spectrum to 2 decimals", m_ok && worst <= 0.005, worst,
                        0.005, "m = " + join(dec.multiplicities())};
  });
  run("asymmetric graph: Aut(G) = {id}", [&] {
    const auto g = Graph::from_adjacency(file("asymmetric_graph.txt"));
    const auto aut = automorphisms(g, 1000);
    const auto brute = automorphisms(g, 1000, SearchStrategy::Exhaustive);
    return holds("asymmetric graph: Aut(G) = {id}",
                 aut.size() == 1 && aut.front().is_identity() && brute == aut);
  });
  run("asymmetric graph: reference hidden symmetry", [&] {
    const Matrix a = file("asymmetric_graph.txt");
    const Matrix g = file("asymmetric_graph_hidden_gamma.txt");
    const bool not_perm = !is_permutation(g).has_value();
    const double r = commutator_residual(a, g);
    return FixtureCheck{"asymmetric graph: reference hidden symmetry", not_perm && r <= 1e-12, r,
                        1e-12, not_perm ? "not a permutation" : "unexpectedly a permutation"};
  });

  // Taylor probe
  const auto f = taylor_example_field();
  const Vector xbar{1.0, 1.0, 1.0};
  run("Hessian of the Taylor example", [&] {
    const double s1 = std::sin(1.0), c1 = std::cos(1.0);
    const Matrix want{{2 - s1, 1 + c1, 2}, {1 + c1, -8, -2}, {2, -2, 0}};
    return at_most("Hessian of the Taylor example",
                   max_abs_diff(hessian_fd(f, xbar).matrix(), want), 1e-5);
  });
  auto matched_reflection = [&]() -> Matrix {
    const auto dec = hessian_symmetry(f, xbar);
    const Matrix target = file("taylor_reference_gamma2.txt");
    for (std::size_t k = 0; k < 3; ++k) {
      Matrix r = reflection(dec.vectors.row(k));
      if (max_abs_diff(r, target) <= kReferenceTol) return r;
    }
    throw PreconditionError("no Hessian eigenvector reflection matches the reference gamma_2");
  };
  for (double scale : {1.0, 0.1}) {
    const double want = scale == 1.0 ? 6.40e-5 : 6.38e-9;
    const std::string name =
        std::string("Taylor probe at ") + (scale == 1.0 ? "h" : "h/10") + " within 2%";
    run(name, [&] {
      const Vector h{0.2 * scale, 0.05 * scale, 0.1 * scale};
      const auto probe = fourth_order_probe(f, xbar, Matrix::identity(3), matched_reflection(), h);
      return at_most(name, std::abs(probe.value - want) / want, 0.02,
                     "value " + format_double(probe.value));
    });
  }

  run("Taylor probe order fit in [3.8, 4.2]", [&] {
    const Vector h{0.2, 0.05, 0.1};
    const double slope = order_fit(f, xbar, Matrix::identity(3), matched_reflection(), h);
    return FixtureCheck{"Taylor probe order fit in [3.8, 4.2]", slope >= 3.8 && slope <= 4.2,
                        std::abs(slope - 4.0), 0.2, "slope " + format_double(slope)};
  });

  // equilibria
  struct Inventory {
    double mu;
    std::vector<ComponentKind> kinds;
    std::vector<double> radii;
  };
  const std::vector<Inventory> expected = {
      {-0.25, {ComponentKind::Origin, ComponentKind::Circle}, {0.0, std::sqrt(5.0)}},
      {0.25,
       {ComponentKind::Origin, ComponentKind::PointPair, ComponentKind::Circle},
       {0.0, 1.0, std::sqrt(3.0)}},
      {0.0, {ComponentKind::Origin, ComponentKind::Circle}, {0.0, 2.0}},
      {0.5, {ComponentKind::Origin, ComponentKind::Sphere}, {0.0, std::numbers::sqrt2}},
      {0.75,
       {ComponentKind::Origin, ComponentKind::Circle, ComponentKind::PointPair},
       {0.0, 1.0, std::sqrt(3.0)}},
      {1.0, {ComponentKind::Origin, ComponentKind::PointPair}, {0.0, 2.0}},
      {1.25, {ComponentKind::Origin, ComponentKind::PointPair}, {0.0, std::sqrt(5.0)}},
  };
  for (const auto& e : expected) {
    const std::string name = "equilibria at mu = " + format_double(e.mu);
    run(name, [&] {
      const auto set = equilibria(e.mu);
      double worst = set.kinds() == e.kinds ? 0.0 : INFINITY;
      for (std::size_t i = 0; i < set.components.size() && i < e.radii.size(); ++i)
        worst = std::max(worst, std::abs(radius_of(set.components[i]) - e.radii[i]));
      return at_most(name, worst, 1e-8);
    });
  }
  run("sweep -0.5..1.5 finds transitions at 0, 0.5, 1", [&] {
    const auto rows = sweep(-0.5, 1.5, 201);
    auto seen_near = [&](double mu0) {
      for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].transition && rows[i - 1].mu <= mu0 + 1e-12 && rows[i].mu >= mu0 - 1e-12)
          return true;
      return false;
    };
    return holds("sweep -0.5..1.5 finds transitions at 0, 0.5, 1",
                 seen_near(0.0) && seen_near(0.5) && seen_near(1.0));
  });
  run("sweep over mu < 0 is origin + circle throughout", [&] {
    bool ok = true;
    for (const auto& row : sweep(-1.0, -0.01, 50))
      ok = ok && row.components.size() == 2 && row.components[0].first == ComponentKind::Origin &&
           row.components[1].first == ComponentKind::Circle;
    return holds("sweep over mu < 0 is origin + circle throughout", ok);
  });
  return out;
}

}  // namespace isogroup
