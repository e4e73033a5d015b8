#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "isogroup/isotropy.hpp"
#include "isogroup/matrix.hpp"
#include "isogroup/spectral.hpp"

namespace isogroup {

/// Simple undirected graph stored as a 0/1 adjacency matrix.
class Graph {
 public:
  /// Validates entries in {0, 1}, symmetry and a zero diagonal.
  static Graph from_adjacency(const Matrix& a);
  /// Edges are 0-indexed vertex pairs; duplicates are ignored, loops rejected.
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return n_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  std::size_t degree(std::size_t i) const;
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  Matrix adjacency() const;
  SymMatrix adjacency_sym() const { return SymMatrix(adjacency()); }

 private:
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// Bijection of {0, ..., n-1}. Its matrix sends e_i to e_map[i], i.e. has a
/// one at (map[i], i); P A P^T = A holds iff A(map i, map j) = A(i, j).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> map);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const { return map_; }
  Matrix matrix() const;
  /// (this * other)[i] = this[other[i]].
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

enum class SearchStrategy {
  Exhaustive,   ///< all n! permutations, n <= 12
  Backtracking  ///< exact, with degree and neighbour-degree pruning
};

inline constexpr std::size_t kExhaustiveCap = 12;
inline constexpr double kPermutationTol = 1e-6;

/// Every permutation commuting with the adjacency matrix, checked exactly in
/// integer arithmetic, in lexicographic order of the maps. Throws
/// LimitError once more than `limit` are found and SizeCapError when
/// exhaustive search is requested above kExhaustiveCap.
std::vector<Permutation> automorphisms(const Graph& g, std::size_t limit,
                                       SearchStrategy strategy = SearchStrategy::Backtracking);

/// True iff A(map i, map j) == A(i, j) for all i, j.
bool is_automorphism(const Graph& g, const Permutation& p);

/// Random element of Gamma(adjacency); generically not a permutation.
IsotropyElement hidden_symmetry_sample(const Graph& g, std::uint64_t seed);

/// Recovers the permutation if every entry is within tol of 0 or 1 with
/// exactly one near-one per row and column.
std::optional<Permutation> is_permutation(const Matrix& p, double tol = kPermutationTol);

/// A witness P with P A_A P^T = A_B (A_B(map i, map j) = A_A(i, j)), or empty.
/// Non-isospectral pairs are rejected before any search. Throws
/// SizeCapError above kExhaustiveCap vertices.
std::optional<Permutation> find_isomorphism(const Graph& ga, const Graph& gb);

}  // namespace isogroup
