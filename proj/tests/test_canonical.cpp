#include "pxa/canonical.hpp"

#include "support/oracles.hpp"
#include "support/test_util.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <map>

using namespace pxa;
using pxa::testing::P;
using pxa::testing::Q;

namespace {

Matrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 8) {
  Matrix r = Matrix::identity(n);
  for (int t = 0; t < ops; ++t) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    Rational c(static_cast<long long>(rng() % 5) - 2);
    for (std::size_t k = 0; k < n; ++k) r(i, k) += c * r(j, k);
  }
  return r;
}

std::multiset<std::pair<int, int>> block_shape(const CompanionJordanDecomposition& d) {
  std::multiset<std::pair<int, int>> s;
  for (const auto& b : d.blocks) s.insert({b.g.degree(), b.d});
  return s;
}

} // namespace

TEST_CASE("companion matrices") {
  CHECK(companion(P({4, 0, 1})) == Matrix{{Q(0), Q(1)}, {Q(-4), Q(0)}});
  CHECK(companion(P({2, 0, 0, 1})) ==
        Matrix{{Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(-2), Q(0), Q(0)}});
  CHECK(companion(P({-7, 1})) == Matrix{{Q(7)}});
  CHECK_THROWS_AS(companion(P({1, 2})), std::domain_error);
  CHECK_THROWS_AS(companion(Polynomial(3)), std::domain_error);
}

TEST_CASE("power basis derivative matrices") {
  SECTION("S_1 for n = 6 has subdiagonal 1..5") {
    Matrix s1 = power_basis_derivative(1, 6);
    Matrix expected(6, 6);
    for (int k = 1; k < 6; ++k)
      expected(static_cast<std::size_t>(k), static_cast<std::size_t>(k - 1)) = Q(k);
    CHECK(s1 == expected);
  }
  SECTION("S_0 is the identity") {
    CHECK(power_basis_derivative(0, 4) == Matrix::identity(4));
  }
  SECTION("S_2 for n = 4") {
    Matrix s2 = power_basis_derivative(2, 4);
    Matrix expected(4, 4);
    expected(2, 0) = Q(1);
    expected(3, 1) = Q(3);
    CHECK(s2 == expected);
  }
  SECTION("S_j maps v_n(x) to v_n^(j)(x)/j!") {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 30; ++trial) {
      int n = 2 + static_cast<int>(rng() % 5);
      int j = static_cast<int>(rng() % n);
      Rational x = pxa::testing::random_rational(rng);
      Matrix v(static_cast<std::size_t>(n), 1);
      for (int i = 0; i < n; ++i) v(static_cast<std::size_t>(i), 0) = pow(x, i);
      // scaled derivative of the power basis, computed symbolically
      Matrix expected(static_cast<std::size_t>(n), 1);
      for (int i = 0; i < n; ++i) {
        Polynomial mono = Polynomial::monomial(i);
        for (int rep = 0; rep < j; ++rep) mono = derivative(mono);
        Rational fact(1);
        for (int rep = 2; rep <= j; ++rep) fact *= Rational(rep);
        expected(static_cast<std::size_t>(i), 0) = mono(x) / fact;
      }
      CHECK(power_basis_derivative(j, n) * v == expected);
    }
  }
  CHECK_THROWS_AS(power_basis_derivative(5, 4), std::domain_error);
}

TEST_CASE("reduced powers matrix") {
  SECTION("x^2+4 with d = 3") {
    Matrix w = reduced_powers_matrix(P({4, 0, 1}), 3);
    Matrix expected{{Q(1), Q(0)},  {Q(0), Q(1)},  {Q(-4), Q(0)},
                    {Q(0), Q(-4)}, {Q(16), Q(0)}, {Q(0), Q(16)}};
    CHECK(w == expected);
  }
  SECTION("x^3+2 with d = 2 has bottom block -2I") {
    Matrix w = reduced_powers_matrix(P({2, 0, 0, 1}), 2);
    CHECK(w.submatrix(0, 0, 3, 3) == Matrix::identity(3));
    CHECK(w.submatrix(3, 0, 3, 3) == Q(-2) * Matrix::identity(3));
  }
  SECTION("d = 1 gives the identity") {
    CHECK(reduced_powers_matrix(P({8, 4, 1}), 1) == Matrix::identity(2));
  }
  CHECK_THROWS_AS(reduced_powers_matrix(P({-1, 0, 1}), 2), std::domain_error);
}

TEST_CASE("companion block transform") {
  SECTION("matches the worked 6x6 transform for (x^2+4)^3") {
    Matrix t = companion_block_transform(P({4, 0, 1}), 3);
    Matrix expected{{Q(1), Q(0), Q(0), Q(0), Q(0), Q(0)},
                    {Q(0), Q(1), Q(1), Q(0), Q(0), Q(0)},
                    {Q(-4), Q(0), Q(0), Q(2), Q(1), Q(0)},
                    {Q(0), Q(-4), Q(-12), Q(0), Q(0), Q(3)},
                    {Q(16), Q(0), Q(0), Q(-16), Q(-24), Q(0)},
                    {Q(0), Q(16), Q(80), Q(0), Q(0), Q(-40)}};
    CHECK(t == expected);
  }
  SECTION("matches the worked 6x6 transform for (x^3+2)^2") {
    Matrix t = companion_block_transform(P({2, 0, 0, 1}), 2);
    Matrix expected{{Q(1), Q(0), Q(0), Q(0), Q(0), Q(0)},
                    {Q(0), Q(1), Q(0), Q(1), Q(0), Q(0)},
                    {Q(0), Q(0), Q(1), Q(0), Q(2), Q(0)},
                    {Q(-2), Q(0), Q(0), Q(0), Q(0), Q(3)},
                    {Q(0), Q(-2), Q(0), Q(-8), Q(0), Q(0)},
                    {Q(0), Q(0), Q(-2), Q(0), Q(-10), Q(0)}};
    CHECK(t == expected);
  }
  SECTION("d = 1 gives the identity") {
    CHECK(companion_block_transform(P({4, 0, 1}), 1) == Matrix::identity(2));
  }
  SECTION("chain identities for randomized irreducible g") {
    std::mt19937_64 rng(409);
    const std::vector<Polynomial> gs = {P({4, 0, 1}), P({2, 0, 0, 1}), P({8, 4, 1}),
                                        P({-3, 1}), P({1, 1, 1})};
    for (int trial = 0; trial < 25; ++trial) {
      const Polynomial& g = gs[rng() % gs.size()];
      int d = 1 + static_cast<int>(rng() % 4);
      int k = g.degree();
      int n = k * d;
      Matrix w = reduced_powers_matrix(g, d);
      Matrix cq = companion(pow(g, d));
      Matrix cg = companion(g);
      CHECK(cq * w == w * cg);
      for (int j = 1; j < d; ++j) {
        Matrix sj = power_basis_derivative(j, n);
        Matrix sjm1 = power_basis_derivative(j - 1, n);
        CHECK(cq * (sj * w) == sjm1 * w + sj * w * cg);
      }
    }
  }
}

TEST_CASE("invariant factors") {
  SECTION("nonderogatory companion has a single factor") {
    Matrix a = companion(P({64, 0, 48, 0, 12, 0, 1}));
    auto fs = invariant_factors(a);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0] == P({64, 0, 48, 0, 12, 0, 1}));
  }
  SECTION("identity") {
    auto fs = invariant_factors(Matrix::identity(2));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0] == P({-1, 1}));
    CHECK(fs[1] == P({-1, 1}));
  }
  SECTION("J_2(0) + (0)") {
    Matrix a(3, 3);
    a(0, 1) = Q(1);
    auto fs = invariant_factors(a);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0] == P({0, 1}));
    CHECK(fs[1] == P({0, 0, 1}));
  }
  SECTION("divisibility chain, product, and agreement with minpoly") {
    std::mt19937_64 rng(419);
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t n = 2 + rng() % 4;
      Matrix a = pxa::testing::random_matrix(rng, n, n, 3, true);
      auto fs = invariant_factors(a);
      Polynomial prod(1);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        prod *= fs[i];
        if (i + 1 < fs.size()) CHECK(divides(fs[i], fs[i + 1]));
      }
      CHECK(prod == charpoly(a));
      CHECK(fs.back() == minpoly(a));
    }
  }
}

TEST_CASE("companion-jordan form of the worked companion matrices") {
  SECTION("(x^2+4)^3") {
    Matrix a = companion(P({64, 0, 48, 0, 12, 0, 1}));
    CompanionJordanDecomposition d = companion_jordan_form(a);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].g == P({4, 0, 1}));
    CHECK(d.blocks[0].d == 3);
    CHECK(d.T == companion_block_transform(P({4, 0, 1}), 3));
    Matrix b{{Q(0), Q(1), Q(1), Q(0), Q(0), Q(0)}, {Q(-4), Q(0), Q(0), Q(1), Q(0), Q(0)},
             {Q(0), Q(0), Q(0), Q(1), Q(1), Q(0)}, {Q(0), Q(0), Q(-4), Q(0), Q(0), Q(1)},
             {Q(0), Q(0), Q(0), Q(0), Q(0), Q(1)}, {Q(0), Q(0), Q(0), Q(0), Q(-4), Q(0)}};
    CHECK(d.T_inv * a * d.T == b);
    CHECK(d.canonical_matrix() == b);
    CHECK(d.T * d.T_inv == Matrix::identity(6));
  }
  SECTION("(x^3+2)^2") {
    Matrix a = companion(P({4, 0, 0, 4, 0, 0, 1}));
    CompanionJordanDecomposition d = companion_jordan_form(a);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].g == P({2, 0, 0, 1}));
    CHECK(d.blocks[0].d == 2);
    CHECK(d.T == companion_block_transform(P({2, 0, 0, 1}), 2));
  }
  SECTION("any companion of an irreducible g is a single simple block") {
    Matrix a = companion(P({8, 4, 1}));
    CompanionJordanDecomposition d = companion_jordan_form(a);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].g == P({8, 4, 1}));
    CHECK(d.blocks[0].d == 1);
    CHECK(d.T == Matrix::identity(2));
  }
}

TEST_CASE("companion-jordan form of the real-Jordan cube-root input") {
  Matrix a{{Q(-2), Q(2), Q(1), Q(0)},
           {Q(-2), Q(-2), Q(0), Q(1)},
           {Q(0), Q(0), Q(-2), Q(2)},
           {Q(0), Q(0), Q(-2), Q(-2)}};
  CompanionJordanDecomposition d = companion_jordan_form(a);
  REQUIRE(d.blocks.size() == 1);
  CHECK(d.blocks[0].g == P({8, 4, 1}));
  CHECK(d.blocks[0].d == 2);
  CHECK(d.T_inv * a * d.T == d.canonical_matrix());
}

TEST_CASE("derogatory inputs decompose correctly") {
  SECTION("J_2(0) + (0)") {
    Matrix a(3, 3);
    a(0, 1) = Q(1);
    CompanionJordanDecomposition d = companion_jordan_form(a);
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.blocks[0].g == P({0, 1}));
    CHECK(d.blocks[0].d == 2); // canonical order: d descending within equal g
    CHECK(d.blocks[1].g == P({0, 1}));
    CHECK(d.blocks[1].d == 1);
    CHECK(d.T_inv * a * d.T == d.canonical_matrix());
  }
  SECTION("identity") {
    CompanionJordanDecomposition d = companion_jordan_form(Matrix::identity(2));
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.blocks[0].g == P({-1, 1}));
    CHECK(d.blocks[1].g == P({-1, 1}));
    CHECK(d.T_inv * Matrix::identity(2) * d.T == d.canonical_matrix());
  }
}

TEST_CASE("round-trip and similarity invariance on randomized block sums") {
  std::mt19937_64 rng(431);
  const std::vector<Polynomial> gs = {P({-1, 1}),   P({0, 1}),      P({2, 1}),
                                      P({4, 0, 1}), P({8, 4, 1}),   P({1, 1, 1}),
                                      P({-2, 0, 1}), P({2, 0, 0, 1})};
  int done = 0;
  while (done < 30) {
    // random direct sum of canonical blocks of total dimension <= 9
    std::vector<ElementaryBlock> blocks;
    std::size_t n = 0;
    while (true) {
      const Polynomial& g = gs[rng() % gs.size()];
      int d = 1 + static_cast<int>(rng() % 3);
      std::size_t dim = static_cast<std::size_t>(g.degree()) * d;
      if (n + dim > 9) break;
      blocks.push_back({g, d});
      n += dim;
      if (rng() % 3 == 0) break;
    }
    if (blocks.empty()) continue;
    Matrix c(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      c.set_block(off, off, companion_jordan_block(b.g, b.d));
      off += b.dimension();
    }
    Matrix r = random_unimodular(rng, n);
    Matrix a = r * c * inverse(r);

    CompanionJordanDecomposition d1 = companion_jordan_form(a);
    CHECK(d1.T * d1.canonical_matrix() * d1.T_inv == a);
    CHECK(d1.T * d1.T_inv == Matrix::identity(n));

    // expected block multiset
    std::multiset<std::pair<int, int>> expected;
    for (const auto& b : blocks) expected.insert({b.g.degree(), b.d});
    CHECK(block_shape(d1) == expected);

    // similarity invariance of the block multiset
    Matrix r2 = random_unimodular(rng, n);
    CompanionJordanDecomposition d2 = companion_jordan_form(r2 * a * inverse(r2));
    CHECK(block_shape(d2) == block_shape(d1));
    std::vector<ElementaryBlock> b1 = d1.blocks, b2 = d2.blocks;
    CHECK(b1.size() == b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) CHECK(b1[i] == b2[i]);
    ++done;
  }
}

TEST_CASE("smith form agrees with the cyclic decomposition route") {
  // Reconstruct the invariant factors from the elementary divisors of
  // companion_jordan_form and compare with the Smith-normal-form path.
  std::mt19937_64 rng(439);
  const std::vector<Polynomial> gs = {P({-1, 1}), P({0, 1}), P({4, 0, 1}), P({1, 1, 1})};
  int done = 0;
  while (done < 25) {
    std::vector<ElementaryBlock> blocks;
    std::size_t n = 0;
    while (true) {
      const Polynomial& g = gs[rng() % gs.size()];
      int d = 1 + static_cast<int>(rng() % 3);
      std::size_t dim = static_cast<std::size_t>(g.degree()) * d;
      if (n + dim > 7) break;
      blocks.push_back({g, d});
      n += dim;
      if (rng() % 3 == 0) break;
    }
    if (blocks.empty()) continue;
    Matrix c(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
      c.set_block(off, off, companion_jordan_block(b.g, b.d));
      off += b.dimension();
    }
    Matrix r = random_unimodular(rng, n);
    Matrix a = r * c * inverse(r);

    // invariant factors from the elementary divisors: repeatedly multiply
    // together the largest remaining power of each distinct irreducible
    std::map<Polynomial, std::vector<int>, bool (*)(const Polynomial&, const Polynomial&)>
        powers(+[](const Polynomial& x, const Polynomial& y) { return x < y; });
    for (const auto& b : companion_jordan_form(a).blocks) powers[b.g].push_back(b.d);
    std::size_t chain_len = 0;
    for (auto& [g, ds] : powers) {
      std::sort(ds.begin(), ds.end(), std::greater<int>());
      chain_len = std::max(chain_len, ds.size());
    }
    std::vector<Polynomial> expected(chain_len, Polynomial(1));
    for (auto& [g, ds] : powers)
      for (std::size_t i = 0; i < ds.size(); ++i)
        expected[chain_len - 1 - i] *= pow(g, ds[i]);
    CHECK(invariant_factors(a) == expected);
    ++done;
  }
}
