#include <doctest.h>

#include <cmath>
#include <set>

#include "isogroup/error.hpp"
#include "isogroup/matrix.hpp"
#include "isogroup/random.hpp"
#include "support.hpp"

using namespace isogroup;

TEST_CASE("matrix arithmetic") {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  CHECK(a * b == Matrix{{2, 1}, {4, 3}});
  CHECK(a + b == Matrix{{1, 3}, {4, 4}});
  CHECK(a - a == Matrix(2, 2));
  CHECK(a.transpose() == Matrix{{1, 3}, {2, 4}});
  CHECK(trace(a) == 5.0);
  CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(30.0)));
  const Vector x{1.0, -1.0};
  CHECK(a * x == Vector{-1.0, -1.0});
  CHECK(asymmetry(a) == doctest::Approx(std::sqrt(2.0)));
  CHECK(max_abs_diff(a, b) == 4.0);
}

TEST_CASE("shape errors") {
  const Matrix a(2, 3);
  CHECK_THROWS_AS(a * a, DimensionError);
  CHECK_THROWS_AS(require_square(a, "test"), DimensionError);
  CHECK_THROWS_AS(Matrix({{1, 2}, {3}}), DimensionError);
}

TEST_CASE("householder QR reproduces the input") {
  support::Engine rng(support::kMasterSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 7;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = support::uniform(rng, -2, 2);
    const auto [q, r] = qr_decompose(m);
    CHECK(orthogonality_residual(q) < 1e-13);
    CHECK(max_abs_diff(q * r, m) < 1e-13);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(r(i, j) == 0.0);
  }
}

TEST_CASE("derive_seed is a fixed function of (root, counter)") {
  CHECK(derive_seed(0, 0) == derive_seed(0, 0));
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(1, 0) != derive_seed(0, 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
}

TEST_CASE("haar_orthogonal covers both components and is seed-deterministic") {
  int negative = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    Rng rng(s);
    const Matrix q = haar_orthogonal(3, rng);
    CHECK(orthogonality_residual(q) < 1e-12);
    const double det = q(0, 0) * (q(1, 1) * q(2, 2) - q(1, 2) * q(2, 1)) -
                       q(0, 1) * (q(1, 0) * q(2, 2) - q(1, 2) * q(2, 0)) +
                       q(0, 2) * (q(1, 0) * q(2, 1) - q(1, 1) * q(2, 0));
    CHECK(std::abs(std::abs(det) - 1.0) < 1e-12);
    negative += det < 0 ? 1 : 0;
    Rng again(s);
    CHECK(haar_orthogonal(3, again) == q);
  }
  // Binomial(400, 1/2): mean 200, sd 10.
  CHECK(negative > 150);
  CHECK(negative < 250);
}

TEST_CASE("haar_orthogonal has a uniform first column") {
  // For Haar Q in O(3) the entry Q(0,0) is distributed with E[x^2] = 1/3.
  double second_moment = 0.0;
  const int samples = 4000;
  Rng rng(7);
  for (int i = 0; i < samples; ++i) {
    const Matrix q = haar_orthogonal(3, rng);
    second_moment += q(0, 0) * q(0, 0);
  }
  CHECK(second_moment / samples == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}
