#include <doctest.h>

#include <cmath>

#include "isogroup/dynsys.hpp"
#include "isogroup/error.hpp"
#include "isogroup/isotropy.hpp"
#include "isogroup/random.hpp"
#include "support.hpp"

using namespace isogroup;

namespace {

SpectralDecomposition a0() { return eig_sym(SymMatrix(support::fixture("guiding_A0.txt"))); }
SpectralDecomposition a_m025() {
  return eig_sym(SymMatrix(support::fixture("guiding_A_m025.txt")));
}

}  // namespace

TEST_CASE("SignPattern codes") {
  const auto s = SignPattern::from_code(0b101, 3);
  CHECK(s.signs() == std::vector<int>{-1, 1, -1});
  CHECK(s.code() == 0b101);
  CHECK_THROWS_AS(SignPattern({1, 0}), ArgumentError);
}

TEST_CASE("BlockOrthogonal validation") {
  CHECK_NOTHROW(BlockOrthogonal({Matrix{{-1}}, Matrix{{0, 1}, {1, 0}}}));
  CHECK_THROWS_AS(BlockOrthogonal({Matrix{{2}}}), ArgumentError);
  CHECK_THROWS_AS(BlockOrthogonal({Matrix(1, 2)}), DimensionError);
  const auto b = BlockOrthogonal::from_signs(SignPattern({1, -1, 1}), {1, 2});
  CHECK(b.full() == Matrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  CHECK(b.multiplicities() == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(BlockOrthogonal::from_signs(SignPattern({1, 1}), {1, 2}), DimensionError);
}

TEST_CASE("conjugate: identity and central element") {
  const auto dec = a0();
  const auto id = conjugate(dec, BlockOrthogonal::identity(dec.multiplicities()));
  CHECK(max_abs_diff(id.gamma, Matrix::identity(3)) < 1e-14);
  const auto neg = conjugate(dec, BlockOrthogonal({Matrix{{-1}}, -Matrix::identity(2)}));
  CHECK(max_abs_diff(neg.gamma, -Matrix::identity(3)) < 1e-14);
  CHECK(id.decomposition_id == dec.id);
}

TEST_CASE("conjugate rejects mismatched block sizes") {
  const auto dec = a0();
  try {
    conjugate(dec, BlockOrthogonal::identity({1, 1, 1}));
    FAIL("expected StructureError");
  } catch (const StructureError& e) {
    CHECK(e.lhs() == std::vector<std::size_t>{1, 1, 1});
    CHECK(e.rhs() == std::vector<std::size_t>{1, 2});
  }
}

TEST_CASE("reference basis: some sign pattern yields the exact swap-like element") {
  const auto dec = from_basis(SymMatrix(support::fixture("guiding_A0.txt")),
                              support::fixture("a0_reference_basis.txt"), 1e-3);
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix gamma3{{0, r, r}, {r, -0.5, 0.5}, {r, 0.5, -0.5}};
  int hits = 0;
  for (std::uint64_t code = 0; code < 8; ++code) {
    const auto e =
        conjugate(dec, BlockOrthogonal::from_signs(SignPattern::from_code(code, 3), {1, 2}));
    if (max_abs_diff(e.gamma, gamma3) < 1e-3) ++hits;
  }
  CHECK(hits == 1);
}

TEST_CASE("gamma2 enumeration") {
  SUBCASE("n = 1") {
    const auto set = gamma2_elements(eig_sym(SymMatrix(Matrix{{3}})));
    REQUIRE(set.size() == 2);
    CHECK(set[0].gamma == Matrix{{1}});
    CHECK(set[1].gamma == Matrix{{-1}});
  }
  SUBCASE("ordered by sign code") {
    const auto set = gamma2_elements(a0());
    REQUIRE(set.size() == 8);
    for (std::size_t i = 0; i < set.size(); ++i)
      CHECK(std::get<SignPattern>(set[i].source).code() == i);
  }
  SUBCASE("every element commutes and squares to the identity") {
    const auto dec = a0();
    for (const auto& e : gamma2_elements(dec)) {
      CHECK(commutator_residual(dec.matrix, e.gamma) <= 1e-8);
      CHECK(frobenius_norm(e.gamma * e.gamma - Matrix::identity(3)) <= 1e-8);
    }
  }
  SUBCASE("the reference basis reproduces all eight reference elements") {
    const auto dec = from_basis(SymMatrix(support::fixture("guiding_A0.txt")),
                                support::fixture("a0_reference_basis.txt"), 1e-3);
    const auto set = gamma2_elements(dec);
    for (int k = 1; k <= 4; ++k) {
      const Matrix g = support::fixture("a0_reference_gamma" + std::to_string(k) + ".txt");
      CHECK(nearest_element(set, g).second <= 1e-3);
      CHECK(nearest_element(set, -g).second <= 1e-3);
    }
  }
  SUBCASE("basis-independent elements match under the Jacobi basis") {
    // +-gamma_1 = +-I and +-gamma_3 do not depend on the basis inside the
    // double eigenspace; +-gamma_2, +-gamma_4 do.
    const auto set = gamma2_elements(a0());
    for (int k : {1, 3}) {
      const Matrix g = support::fixture("a0_reference_gamma" + std::to_string(k) + ".txt");
      CHECK(nearest_element(set, g).second <= 1e-3);
      CHECK(nearest_element(set, -g).second <= 1e-3);
    }
    for (int k : {2, 4}) {
      const Matrix g = support::fixture("a0_reference_gamma" + std::to_string(k) + ".txt");
      const auto dec = a0();
      CHECK(is_member(dec, g, 1e-3));
    }
  }
  SUBCASE("size cap") {
    support::Engine rng(support::kMasterSeed);
    const auto dec = eig_sym(SymMatrix(support::random_symmetric_uniform(21, rng)));
    CHECK_THROWS_AS(gamma2_elements(dec), SizeCapError);
  }
}

TEST_CASE("kernel flip") {
  const double v[] = {1.0 / std::sqrt(2.0), 0.5, 0.5};
  int flips = 0;
  for (const auto& e : gamma2_elements(a0())) {
    Vector gv = e.gamma * v;
    for (std::size_t i = 0; i < 3; ++i) gv[i] += v[i];
    if (support::euclid(gv) <= 1e-6) ++flips;
  }
  // sign -1 on the kernel vector, any signs on the double eigenspace
  CHECK(flips == 4);
}

TEST_CASE("sample_gamma") {
  SUBCASE("simple spectrum samples are sign-group elements") {
    const double l[] = {1, 2, 3, 4};
    support::Engine rng(support::kMasterSeed + 10);
    const auto dec = eig_sym(SymMatrix(support::planted(l, support::random_orthogonal(4, rng))));
    const auto set = gamma2_elements(dec);
    for (std::uint64_t s = 0; s < 20; ++s)
      CHECK(nearest_element(set, sample_gamma(dec, s).gamma).second < 1e-12);
  }
  SUBCASE("double eigenvalue samples commute") {
    const auto dec = a_m025();
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto g = sample_gamma(dec, derive_seed(11, s));
      CHECK(commutator_residual(dec.matrix, g.gamma) <= 1e-8);
      CHECK(orthogonality_residual(g.gamma) <= 1e-9 * 3);
    }
  }
  SUBCASE("same seed, same matrix") {
    const auto dec = a_m025();
    CHECK(sample_gamma(dec, 99).gamma == sample_gamma(dec, 99).gamma);
    CHECK(sample_gamma(dec, 99).gamma != sample_gamma(dec, 100).gamma);
  }
  SUBCASE("continuous part is not confined to sign patterns") {
    const auto dec = a_m025();
    const auto set = gamma2_elements(dec);
    CHECK(nearest_element(set, sample_gamma(dec, 5).gamma).second > 1e-3);
  }
}

TEST_CASE("commutator_residual") {
  const Matrix a = support::fixture("guiding_A0.txt");
  CHECK(commutator_residual(a, Matrix::identity(3)) == 0.0);
  CHECK(commutator_residual(a, a) <= 1e-14);
  CHECK(commutator_residual(a, support::fixture("guiding_S.txt")) <= 1e-14);
  CHECK_THROWS_AS(commutator_residual(a, Matrix::identity(2)), DimensionError);
}

TEST_CASE("is_member") {
  const auto dec = a0();
  CHECK(is_member(dec, guiding_swap(), 1e-8));
  CHECK(is_member(dec, Matrix::identity(3), 1e-8));
  support::Engine rng(support::kMasterSeed + 12);
  const Matrix q = support::random_orthogonal(3, rng);
  CHECK(commutator_residual(dec.matrix, q) > 1e-2);
  CHECK_FALSE(is_member(dec, q, 1e-8));
  // commuting but not orthogonal
  CHECK_FALSE(is_member(dec, 2.0 * Matrix::identity(3), 1e-8));
  CHECK_THROWS_AS(is_member(dec, Matrix::identity(2), 1e-8), DimensionError);
}

TEST_CASE("is_finite") {
  const double l[] = {1, 2, 3};
  CHECK(is_finite(eig_sym(SymMatrix(Matrix::diagonal(l)))));
  CHECK_FALSE(is_finite(a_m025()));
  const auto d4 = eig_sym(SymMatrix(support::fixture("d4_A0.txt")), 1e-8);
  CHECK_FALSE(is_finite(d4));
  const auto m = d4.multiplicities();
  CHECK(std::count(m.begin(), m.end(), 1) == 8);
  CHECK(std::count(m.begin(), m.end(), 2) == 4);
}

TEST_CASE("D4 generators and the extra symmetry are members") {
  const auto dec = eig_sym(SymMatrix(support::fixture("d4_A0.txt")));
  for (const char* f : {"d4_R.txt", "d4_S.txt", "d4_gamma1.txt"}) {
    CAPTURE(f);
    CHECK(commutator_residual(dec.matrix, support::fixture(f)) <= 1e-10);
    CHECK(is_member(dec, support::fixture(f), 1e-8));
  }
}

TEST_CASE("group closure of the sign group") {
  support::Engine rng(support::kMasterSeed + 13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dec = eig_sym(SymMatrix(support::random_symmetric_uniform(4, rng)));
    const auto set = gamma2_elements(dec);
    for (const auto& gi : set)
      for (const auto& gj : set) CHECK(nearest_element(set, gi.gamma * gj.gamma).second <= 1e-8);
  }
}
