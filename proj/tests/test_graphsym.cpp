#include <doctest.h>

#include <algorithm>
#include <set>

#include "isogroup/error.hpp"
#include "isogroup/graphsym.hpp"
#include "isogroup/isotropy.hpp"
#include "isogroup/procrustes.hpp"
#include "support.hpp"

using namespace isogroup;

namespace {

Graph asymmetric() { return Graph::from_adjacency(support::fixture("asymmetric_graph.txt")); }

Graph path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph random_graph(std::size_t n, double p, support::Engine& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (support::uniform(rng, 0, 1) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

// Brute force over all n! maps, checked entrywise.
std::vector<Permutation> brute_force(const Graph& g) {
  std::vector<Permutation> out;
  for (auto& map : support::all_permutations(g.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < g.size() && ok; ++i)
      for (std::size_t j = 0; j < g.size() && ok; ++j)
        ok = g.adjacent(map[i], map[j]) == g.adjacent(i, j);
    if (ok) out.emplace_back(map);
  }
  return out;
}

Graph relabel(const Graph& g, const Permutation& p) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (auto [u, v] : g.edges()) e.emplace_back(p[u], p[v]);
  return Graph::from_edges(g.size(), e);
}

}  // namespace

TEST_CASE("graph construction") {
  const Graph g = asymmetric();
  CHECK(g.size() == 8);
  CHECK(g.edge_count() == 9);
  CHECK(g.degree(5) == 4);
  CHECK_THROWS_AS(Graph::from_adjacency(Matrix{{0, 2}, {2, 0}}), InputError);
  CHECK_THROWS_AS(Graph::from_adjacency(Matrix{{0, 1}, {0, 0}}), InputError);
  CHECK_THROWS_AS(Graph::from_adjacency(Matrix{{1, 0}, {0, 0}}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), InputError);
  CHECK(Graph::from_edges(3, {{0, 1}, {1, 0}}).edge_count() == 1);
}

TEST_CASE("permutation algebra") {
  const Permutation p({1, 2, 0});
  CHECK(p.compose(p.inverse()).is_identity());
  CHECK(p.compose(p).compose(p).is_identity());
  const Matrix m = p.matrix();
  CHECK(m(1, 0) == 1.0);
  CHECK(m(2, 1) == 1.0);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), ArgumentError);
}

TEST_CASE("automorphisms of small graphs") {
  SUBCASE("asymmetric graph") {
    const auto aut = automorphisms(asymmetric(), 100);
    REQUIRE(aut.size() == 1);
    CHECK(aut.front().is_identity());
  }
  SUBCASE("path on 3 vertices") {
    const auto aut = automorphisms(path(3), 100);
    REQUIRE(aut.size() == 2);
    CHECK(aut[0].is_identity());
    CHECK(aut[1].map() == std::vector<std::size_t>{2, 1, 0});
  }
  SUBCASE("K4") { CHECK(automorphisms(complete(4), 100).size() == 24); }
  SUBCASE("limit") { CHECK_THROWS_AS(automorphisms(complete(5), 100), LimitError); }
  SUBCASE("exhaustive cap") {
    CHECK_THROWS_AS(automorphisms(path(13), 10, SearchStrategy::Exhaustive), SizeCapError);
    CHECK(automorphisms(path(13), 10).size() == 2);
  }
}

TEST_CASE("backtracking agrees with brute force") {
  support::Engine rng(support::kMasterSeed + 30);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Graph g = random_graph(n, trial % 3 == 0 ? 0.3 : 0.5, rng);
    const auto fast = automorphisms(g, 100000);
    const auto brute = brute_force(g);
    CHECK(fast == brute);
    CHECK(automorphisms(g, 100000, SearchStrategy::Exhaustive) == brute);
  }
  CHECK(automorphisms(asymmetric(), 10, SearchStrategy::Exhaustive).size() == 1);
}

TEST_CASE("automorphisms form a group inside the isotropy group") {
  support::Engine rng(support::kMasterSeed + 31);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(7, 0.4, rng);
    const auto aut = automorphisms(g, 100000);
    const std::set<Permutation> group(aut.begin(), aut.end());
    const auto dec = eig_sym(g.adjacency_sym());
    for (const auto& p : aut) {
      CHECK(group.count(p.inverse()) == 1);
      CHECK(is_member(dec, p.matrix(), 1e-8));
      for (const auto& q : aut) CHECK(group.count(p.compose(q)) == 1);
    }
  }
}

TEST_CASE("spectrum of the asymmetric graph") {
  const auto dec = eig_sym(asymmetric().adjacency_sym());
  CHECK(dec.multiplicities() == std::vector<std::size_t>{1, 1, 1, 2, 1, 1, 1});
  // cross-checked with an independent LAPACK symmetric eigensolver
  const double want[] = {-2.238735583694, -1.660921114064, -0.834399012478, 0.0, 0.0,
                         0.740681011124,  1.285683403314,  2.707691295798};
  for (std::size_t i = 0; i < 8; ++i) CHECK(dec.lambdas[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("hidden symmetries") {
  SUBCASE("asymmetric graph") {
    const Graph g = asymmetric();
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto e = hidden_symmetry_sample(g, s);
      CHECK(commutator_residual(g.adjacency(), e.gamma) <= 1e-8);
      CHECK_FALSE(is_permutation(e.gamma).has_value());
    }
  }
  SUBCASE("single edge") {
    const Graph g = Graph::from_edges(2, {{0, 1}});
    const Matrix swap{{0, 1}, {1, 0}};
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto e = hidden_symmetry_sample(g, s);
      CHECK(commutator_residual(g.adjacency(), e.gamma) <= 1e-10);
      const double d = std::min({max_abs_diff(e.gamma, Matrix::identity(2)),
                                 max_abs_diff(e.gamma, -Matrix::identity(2)),
                                 max_abs_diff(e.gamma, swap), max_abs_diff(e.gamma, -swap)});
      CHECK(d < 1e-12);
    }
  }
  SUBCASE("reference non-permutation symmetry") {
    const Matrix gamma = support::fixture("asymmetric_graph_hidden_gamma.txt");
    CHECK_FALSE(is_permutation(gamma).has_value());
    CHECK(commutator_residual(asymmetric().adjacency(), gamma) <= 1e-12);
    CHECK(orthogonality_residual(gamma) <= 1e-12);
  }
}

TEST_CASE("is_permutation") {
  const auto id = is_permutation(Matrix::identity(4));
  REQUIRE(id.has_value());
  CHECK(id->is_identity());
  const Matrix near_swap = 0.999999 * Matrix{{0, 1}, {1, 0}};
  const auto swap = is_permutation(near_swap, 1e-4);
  REQUIRE(swap.has_value());
  CHECK(swap->map() == std::vector<std::size_t>{1, 0});
  CHECK_FALSE(is_permutation(near_swap, 1e-8).has_value());
  CHECK_FALSE(is_permutation(Matrix{{1, 1}, {0, 0}}).has_value());
  CHECK_FALSE(is_permutation(Matrix(2, 3)).has_value());
}

TEST_CASE("find_isomorphism") {
  SUBCASE("planted relabelling") {
    support::Engine rng(support::kMasterSeed + 32);
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = random_graph(8, 0.4, rng);
      std::vector<std::size_t> map(8);
      for (std::size_t i = 0; i < 8; ++i) map[i] = i;
      std::shuffle(map.begin(), map.end(), rng);
      const Graph h = relabel(g, Permutation(map));
      const auto p = find_isomorphism(g, h);
      REQUIRE(p.has_value());
      CHECK(relabel(g, *p).adjacency() == h.adjacency());
    }
  }
  SUBCASE("path and star on three vertices") {
    const Graph star = Graph::from_edges(3, {{0, 1}, {0, 2}});
    const auto p = find_isomorphism(path(3), star);
    REQUIRE(p.has_value());
    CHECK(relabel(path(3), *p).adjacency() == star.adjacency());
  }
  SUBCASE("one edge moved") {
    const Graph g = asymmetric();
    auto moved = [&](std::pair<std::size_t, std::size_t> drop, std::pair<std::size_t, std::size_t> add) {
      auto edges = g.edges();
      std::erase(edges, drop);
      edges.push_back(add);
      return Graph::from_edges(8, edges);
    };
    auto brute_isomorphic = [&](const Graph& h) {
      for (auto& map : support::all_permutations(8))
        if (relabel(g, Permutation(map)).adjacency() == h.adjacency()) return true;
      return false;
    };
    // 1-based edge 2-6 becomes 2-5: the result is a relabelling of g
    const Graph same = moved({1, 5}, {1, 4});
    CHECK(brute_isomorphic(same));
    const auto p = find_isomorphism(g, same);
    REQUIRE(p.has_value());
    CHECK(relabel(g, *p).adjacency() == same.adjacency());
    // 1-based edge 2-6 becomes 1-8: spectra differ
    const Graph other = moved({1, 5}, {0, 7});
    CHECK_FALSE(isospectral(g.adjacency_sym(), other.adjacency_sym(), 1e-8));
    CHECK_FALSE(brute_isomorphic(other));
    CHECK_FALSE(find_isomorphism(g, other).has_value());
  }
  SUBCASE("non-isomorphic cospectral pair") {
    // K_{1,4} and C4 + K1 share the spectrum {-2, 0, 0, 0, 2}
    const Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    const Graph cycle = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(isospectral(star.adjacency_sym(), cycle.adjacency_sym(), 1e-8));
    CHECK_FALSE(find_isomorphism(star, cycle).has_value());
  }
  SUBCASE("size handling") {
    CHECK_FALSE(find_isomorphism(path(3), path(4)).has_value());
    CHECK_THROWS_AS(find_isomorphism(path(13), path(13)), SizeCapError);
  }
}
