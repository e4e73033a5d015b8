#include "isogroup/graphsym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isogroup/error.hpp"
#include "isogroup/procrustes.hpp"

namespace isogroup {
namespace {

// Degree plus the sorted degrees of the neighbours; preserved by every
// isomorphism, so candidates must match it.
using Signature = std::vector<std::size_t>;

std::vector<Signature> signatures(const Graph& g) {
  std::vector<Signature> sig(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Signature s;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.adjacent(i, j)) s.push_back(g.degree(j));
    std::sort(s.begin(), s.end());
    s.insert(s.begin(), g.degree(i));
    sig[i] = std::move(s);
  }
  return sig;
}

// Depth-first extension of a partial map from ga to gb, vertex by vertex.
class Matcher {
 public:
  Matcher(const Graph& ga, const Graph& gb, std::size_t limit, bool first_only)
      : ga_(ga), gb_(gb), limit_(limit), first_only_(first_only),
        sig_a_(signatures(ga)), sig_b_(signatures(gb)),
        map_(ga.size()), used_(gb.size(), false) {}

  std::vector<Permutation> run() {
    extend(0);
    return std::move(found_);
  }

 private:
  bool extend(std::size_t i) {
    const std::size_t n = ga_.size();
    if (i == n) {
      found_.emplace_back(map_);
      if (found_.size() > limit_)
        throw LimitError("automorphism search exceeded the limit of " +
                         std::to_string(limit_) + " results");
      return first_only_;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used_[c] || sig_a_[i] != sig_b_[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = ga_.adjacent(i, j) == gb_.adjacent(c, map_[j]);
      if (!ok) continue;
      map_[i] = c;
      used_[c] = true;
      const bool done = extend(i + 1);
      used_[c] = false;
      if (done) return true;
    }
    return false;
  }

  const Graph& ga_;
  const Graph& gb_;
  std::size_t limit_;
  bool first_only_;
  std::vector<Signature> sig_a_;
  std::vector<Signature> sig_b_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<Permutation> found_;
};

}  // namespace

Graph Graph::from_adjacency(const Matrix& a) {
  require_square(a, "Graph::from_adjacency");
  const std::size_t n = a.rows();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = a(i, j);
      if (x != 0.0 && x != 1.0)
        throw InputError("adjacency entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not 0 or 1");
      if (x != a(j, i)) throw InputError("adjacency matrix is not symmetric");
      if (i == j && x != 0.0) throw InputError("adjacency matrix has a self-loop");
      g.adj_[i * n + j] = x != 0.0 ? 1 : 0;
    }
  }
  return g;
}

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references a vertex >= " + std::to_string(n));
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    g.adj_[u * n + v] = g.adj_[v * n + u] = 1;
  }
  return g;
}

std::size_t Graph::degree(std::size_t i) const {
  return static_cast<std::size_t>(
      std::count(adj_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                 adj_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_), std::uint8_t{1}));
}

std::size_t Graph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1})) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) e.emplace_back(i, j);
  return e;
}

Matrix Graph::adjacency() const {
  Matrix a(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a(i, j) = adj_[i * n_ + j];
  return a;
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t x : map_) {
    if (x >= map_.size() || seen[x]) throw ArgumentError("map is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Matrix Permutation::matrix() const {
  Matrix p(size(), size());
  for (std::size_t i = 0; i < size(); ++i) p(map_[i], i) = 1.0;
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw DimensionError("permutation sizes differ");
  std::vector<std::size_t> m(size());
  for (std::size_t i = 0; i < size(); ++i) m[i] = map_[other.map_[i]];
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> m(size());
  for (std::size_t i = 0; i < size(); ++i) m[map_[i]] = i;
  return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.size() != g.size()) throw DimensionError("permutation and graph sizes differ");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.adjacent(p[i], p[j]) != g.adjacent(i, j)) return false;
  return true;
}

std::vector<Permutation> automorphisms(const Graph& g, std::size_t limit,
                                       SearchStrategy strategy) {
  if (strategy == SearchStrategy::Backtracking) return Matcher(g, g, limit, false).run();

  if (g.size() > kExhaustiveCap)
    throw SizeCapError("exhaustive automorphism search is limited to " +
                       std::to_string(kExhaustiveCap) + " vertices");
  std::vector<Permutation> found;
  std::vector<std::size_t> m(g.size());
  std::iota(m.begin(), m.end(), 0);
  do {
    Permutation p(m);
    if (is_automorphism(g, p)) {
      found.push_back(std::move(p));
      if (found.size() > limit)
        throw LimitError("automorphism search exceeded the limit of " + std::to_string(limit) +
                         " results");
    }
  } while (std::next_permutation(m.begin(), m.end()));
  return found;
}

IsotropyElement hidden_symmetry_sample(const Graph& g, std::uint64_t seed) {
  return sample_gamma(eig_sym(g.adjacency_sym()), seed);
}

std::optional<Permutation> is_permutation(const Matrix& p, double tol) {
  if (!p.is_square()) return std::nullopt;
  const std::size_t n = p.rows();
  std::vector<std::size_t> map(n, n);
  std::vector<bool> row_taken(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = p(i, j);
      if (std::abs(x - 1.0) <= tol) {
        if (map[j] != n || row_taken[i]) return std::nullopt;
        map[j] = i;
        row_taken[i] = true;
      } else if (std::abs(x) > tol) {
        return std::nullopt;
      }
    }
    if (map[j] == n) return std::nullopt;
  }
  return Permutation(std::move(map));
}

std::optional<Permutation> find_isomorphism(const Graph& ga, const Graph& gb) {
  if (ga.size() != gb.size()) return std::nullopt;
  if (ga.size() > kExhaustiveCap)
    throw SizeCapError("find_isomorphism is limited to " + std::to_string(kExhaustiveCap) +
                       " vertices");
  if (ga.edge_count() != gb.edge_count()) return std::nullopt;
  const auto a = ga.adjacency_sym();
  const auto b = gb.adjacency_sym();
  if (!isospectral(a, b, 1e-8 * std::max(1.0, a.norm()))) return std::nullopt;
  auto found = Matcher(ga, gb, 1, true).run();
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

}  // namespace isogroup
