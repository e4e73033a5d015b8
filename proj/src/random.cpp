#include "isogroup/random.hpp"

namespace isogroup {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t counter) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gaussian_matrix(std::size_t m, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = normal(rng);
  return g;
}

Matrix haar_orthogonal(std::size_t m, Rng& rng) {
  auto [q, r] = qr_decompose(gaussian_matrix(m, rng));
  for (std::size_t j = 0; j < m; ++j) {
    if (r(j, j) < 0.0)
      for (std::size_t i = 0; i < m; ++i) q(i, j) = -q(i, j);
  }
  std::bernoulli_distribution flip(0.5);
  if (m > 0 && flip(rng))
    for (std::size_t i = 0; i < m; ++i) q(i, 0) = -q(i, 0);
  return q;
}

Matrix random_symmetric(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = normal(rng);
  return a;
}

}  // namespace isogroup
