#include "pxa/matrix.hpp"

#include "pxa/linear_solve.hpp"
#include "pxa/matrix_polynomials.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pxa;
using pxa::testing::P;
using pxa::testing::Q;

namespace {
Matrix jordan_block(std::size_t n, const Rational& lambda) {
  Matrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = Rational(1);
  }
  return j;
}

Matrix companion_of(const Polynomial& g) {
  std::size_t k = static_cast<std::size_t>(g.degree());
  Matrix c(k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) c(i, i + 1) = Rational(1);
  for (std::size_t j = 0; j < k; ++j) c(k - 1, j) = -g.coeff(j);
  return c;
}
} // namespace

TEST_CASE("matrix powers match the worked block solutions") {
  Matrix x1{{Q(1), Q(1, 2)}, {Q(-2), Q(1)}};
  CHECK(pow(x1, 2) == Matrix{{Q(0), Q(1)}, {Q(-4), Q(0)}});
  Matrix y1{{Q(2), Q(1, 2)}, {Q(-4), Q(0)}};
  CHECK(pow(y1, 3) == Matrix{{Q(0), Q(1)}, {Q(-8), Q(-4)}});
  std::mt19937_64 rng(31);
  Matrix a = pxa::testing::random_matrix(rng, 4, 4);
  CHECK(a * Matrix::identity(4) == a);
  CHECK(pow(a, 0) == Matrix::identity(4));
}

TEST_CASE("matrix shape errors") {
  Matrix a(2, 3), b(2, 2);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(b * a * b, std::invalid_argument);
  CHECK_THROWS_AS(pow(a, 2), std::invalid_argument);
}

TEST_CASE("inverse") {
  Matrix w{{Q(1), Q(0)}, {Q(-2), Q(2)}};
  CHECK(inverse(w) == Matrix{{Q(1), Q(0)}, {Q(1), Q(1, 2)}});
  CHECK(inverse(Matrix::identity(3)) == Matrix::identity(3));

  SECTION("a * a^{-1} = I on randomized nonsingular matrices") {
    std::mt19937_64 rng(37);
    int done = 0;
    while (done < 40) {
      Matrix a = pxa::testing::random_matrix(rng, 4, 4);
      try {
        Matrix inv = inverse(a);
        CHECK(a * inv == Matrix::identity(4));
        CHECK(inv * a == Matrix::identity(4));
        ++done;
      } catch (const singular_matrix_error&) {
      }
    }
  }

  SECTION("singular matrices report their rank") {
    Matrix s{{Q(1), Q(2)}, {Q(2), Q(4)}};
    try {
      inverse(s);
      FAIL("expected singular_matrix_error");
    } catch (const singular_matrix_error& e) {
      CHECK(e.rank() == 1);
    }
  }
}

TEST_CASE("kronecker product") {
  Matrix b{{Q(1), Q(2)}, {Q(3), Q(4)}};
  CHECK(kron(Matrix::identity(2), b) == direct_sum(b, b));

  SECTION("the coefficient matrix of the 4x4 cube-root system") {
    Matrix x1{{Q(2), Q(1, 2)}, {Q(-4), Q(0)}};
    Matrix x1sq = pow(x1, 2);
    Matrix m = kron(Matrix::identity(2), x1sq) + kron(transpose(x1), x1) +
               kron(transpose(x1sq), Matrix::identity(2));
    Matrix expected{{Q(8), Q(2), Q(-16), Q(-2)},
                    {Q(-16), Q(0), Q(16), Q(-8)},
                    {Q(2), Q(1, 4), Q(0), Q(1)},
                    {Q(-2), Q(1), Q(-8), Q(-4)}};
    CHECK(m == expected);
  }

  SECTION("shape") {
    std::mt19937_64 rng(41);
    Matrix a = pxa::testing::random_matrix(rng, 2, 3);
    Matrix b2 = pxa::testing::random_matrix(rng, 4, 2);
    CHECK(kron(a, b2).rows() == 8);
    CHECK(kron(a, b2).cols() == 6);
  }
}

TEST_CASE("vec and unvec") {
  Matrix a{{Q(1), Q(3)}, {Q(2), Q(4)}};
  Matrix v = vec(a);
  CHECK(v == Matrix{{Q(1)}, {Q(2)}, {Q(3)}, {Q(4)}});
  CHECK(vec(Matrix::identity(2)) == Matrix{{Q(1)}, {Q(0)}, {Q(0)}, {Q(1)}});
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    Matrix m = pxa::testing::random_matrix(rng, 3, 5);
    CHECK(unvec(vec(m), 3, 5) == m);
  }
}

TEST_CASE("vec turns sandwich products into kronecker systems") {
  // vec(AXB) = (B^T (x) A) vec(X)
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    Matrix a = pxa::testing::random_matrix(rng, 2, 3);
    Matrix x = pxa::testing::random_matrix(rng, 3, 4);
    Matrix b = pxa::testing::random_matrix(rng, 4, 2);
    CHECK(vec(a * x * b) == kron(transpose(b), a) * vec(x));
  }
}

TEST_CASE("solve_linear") {
  SECTION("unique solution of the cube-root step") {
    Matrix m{{Q(8), Q(2), Q(-16), Q(-2)},
             {Q(-16), Q(0), Q(16), Q(-8)},
             {Q(2), Q(1, 4), Q(0), Q(1)},
             {Q(-2), Q(1), Q(-8), Q(-4)}};
    LinearSolution s = solve_linear(m, vec(Matrix::identity(2)));
    REQUIRE(s.status == SolveStatus::unique);
    Matrix x2 = unvec(*s.particular, 2, 2);
    CHECK(x2 == Q(1, 12) * Matrix{{Q(-2), Q(-1)}, {Q(8), Q(2)}});
  }
  SECTION("scalar inconsistency") {
    Matrix zero(1, 1), one{{Q(1)}};
    CHECK(solve_linear(zero, one).status == SolveStatus::inconsistent);
  }
  SECTION("identity system") {
    std::mt19937_64 rng(53);
    Matrix b = pxa::testing::random_matrix(rng, 5, 1);
    LinearSolution s = solve_linear(Matrix::identity(5), b);
    REQUIRE(s.status == SolveStatus::unique);
    CHECK(*s.particular == b);
  }
  SECTION("certified residuals, ranks and nullspaces on random systems") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 120; ++i) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      Matrix m = pxa::testing::random_matrix(rng, r, c, 3);
      Matrix rhs = pxa::testing::random_matrix(rng, r, 1, 3);
      LinearSolution s = solve_linear(m, rhs);
      std::size_t rank_m = pxa::testing::naive_rank(m);
      std::size_t rank_aug = pxa::testing::naive_rank(hcat(m, rhs));
      if (s.status == SolveStatus::inconsistent) {
        CHECK(rank_aug > rank_m);
      } else {
        CHECK(rank_aug == rank_m);
        CHECK(m * *s.particular == rhs);
        CHECK(s.nullspace_basis.size() == c - rank_m);
        for (const Matrix& v : s.nullspace_basis) CHECK((m * v).is_zero());
        CHECK((s.status == SolveStatus::unique) == (rank_m == c));
      }
    }
  }
  SECTION("rref matches a naive rational elimination") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 120; ++i) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      Matrix m = pxa::testing::random_matrix(rng, r, c, 4);
      CHECK(rref(m) == pxa::testing::naive_rref(m));
    }
  }
}

TEST_CASE("charpoly") {
  Matrix a = companion_of(P({64, 0, 48, 0, 12, 0, 1}));
  CHECK(charpoly(a) == P({64, 0, 48, 0, 12, 0, 1}));
  CHECK(charpoly(jordan_block(5, Q(3))) == pow(P({-3, 1}), 5));

  SECTION("companion round-trip for randomized monic g") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 60; ++i) {
      int deg = 1 + static_cast<int>(rng() % 8);
      Polynomial g = pxa::testing::random_monic_poly(rng, deg, 6);
      CHECK(charpoly(companion_of(g)) == g);
    }
  }
  SECTION("Cayley-Hamilton on randomized matrices") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 40; ++i) {
      std::size_t n = 1 + rng() % 5;
      Matrix a2 = pxa::testing::random_matrix(rng, n, n, 4);
      CHECK(evaluate(charpoly(a2), a2).is_zero());
    }
  }
}

TEST_CASE("minpoly") {
  CHECK(minpoly(Matrix::identity(2)) == P({-1, 1}));
  Matrix a = direct_sum(jordan_block(2, Q(0)), Matrix(1, 1));
  CHECK(minpoly(a) == P({0, 0, 1}));
  Matrix ex1 = companion_of(P({64, 0, 48, 0, 12, 0, 1}));
  CHECK(minpoly(ex1) == P({64, 0, 48, 0, 12, 0, 1}));

  SECTION("minpoly divides charpoly and annihilates") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 40; ++i) {
      std::size_t n = 1 + rng() % 4;
      Matrix m = pxa::testing::random_matrix(rng, n, n, 3);
      Polynomial mp = minpoly(m);
      CHECK(divides(mp, charpoly(m)));
      CHECK(evaluate(mp, m).is_zero());
    }
  }
  SECTION("companions are nonderogatory") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 30; ++i) {
      int deg = 1 + static_cast<int>(rng() % 6);
      Polynomial g = pxa::testing::random_monic_poly(rng, deg, 5);
      CHECK(is_nonderogatory(companion_of(g)));
    }
  }
}

TEST_CASE("is_nonderogatory") {
  CHECK(is_nonderogatory(companion_of(P({64, 0, 48, 0, 12, 0, 1}))));
  CHECK_FALSE(is_nonderogatory(Matrix::identity(2)));
  CHECK_FALSE(is_nonderogatory(direct_sum(jordan_block(2, Q(0)), Matrix(1, 1))));
}

TEST_CASE("polynomial evaluation at matrices") {
  Matrix x{{Q(2), Q(1, 4)}, {Q(0), Q(2)}};
  CHECK(evaluate(P({0, 0, 1}), x) == Matrix{{Q(4), Q(1)}, {Q(0), Q(4)}});

  Matrix t(5, 5);
  const long long chain[] = {2, 1, -2, 7, -30};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) t(i, j) = Q(chain[j - i]);
  CHECK(evaluate(P({1, 5, -4, 1}), t) == jordan_block(5, Q(3)));

  std::mt19937_64 rng(83);
  Matrix r = pxa::testing::random_matrix(rng, 3, 3);
  CHECK(evaluate(Polynomial(1), r) == Matrix::identity(3));
}
