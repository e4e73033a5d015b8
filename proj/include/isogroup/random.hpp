#pragma once

#include <cstdint>
#include <random>

#include "isogroup/matrix.hpp"

namespace isogroup {

using Rng = std::mt19937_64;

/// Expands a root seed into an independent per-subtask seed (splitmix64 of
/// root mixed with the counter). Same (root, counter) always gives the same
/// value.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter);

/// m x m matrix of independent standard normal draws.
Matrix gaussian_matrix(std::size_t m, Rng& rng);

/// Haar-distributed element of O(m): QR of a Gaussian draw with the column
/// signs fixed so diag(R) > 0, then the first column negated with
/// probability 1/2 so both components of O(m) are reached.
Matrix haar_orthogonal(std::size_t m, Rng& rng);

/// Random symmetric matrix with independent N(0,1) upper-triangle entries.
Matrix random_symmetric(std::size_t n, Rng& rng);

}  // namespace isogroup
