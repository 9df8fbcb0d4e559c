#pragma once

#include "pxa/factorization.hpp"
#include "pxa/linear_solve.hpp"
#include "pxa/matrix.hpp"
#include "pxa/matrix_polynomials.hpp"
#include "pxa/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pxa {

/// One elementary divisor g^d of the characteristic polynomial.
struct ElementaryBlock {
  Polynomial g;
  int d = 1;

  std::size_t dimension() const { return static_cast<std::size_t>(g.degree()) * d; }

  friend bool operator==(const ElementaryBlock& a, const ElementaryBlock& b) {
    return a.d == b.d && a.g == b.g;
  }
};

/// Canonical block order: by (deg g, coefficients of g, d descending).
inline bool canonical_block_less(const ElementaryBlock& a, const ElementaryBlock& b) {
  if (a.g != b.g) return a.g < b.g;
  return a.d > b.d;
}

/// Companion matrix of a monic polynomial: superdiagonal ones, last row the
/// negated coefficients.
inline Matrix companion(const Polynomial& g) {
  if (!g.is_monic() || g.degree() < 1)
    throw std::domain_error("companion: polynomial must be monic of degree >= 1");
  const std::size_t k = static_cast<std::size_t>(g.degree());
  Matrix c(k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) c(i, i + 1) = Rational(1);
  for (std::size_t j = 0; j < k; ++j) c(k - 1, j) = -g.coeff(j);
  return c;
}

/// The n x n matrix S_j mapping the power-basis vector v_n(x) to its j-th
/// scaled derivative v_n^(j)(x)/j!: entries binom(k, j) at (k, k-j). S_0 is
/// the identity.
inline Matrix power_basis_derivative(int j, int n) {
  if (j < 0 || j > n) throw std::domain_error("power_basis_derivative: need 0 <= j <= n");
  Matrix s(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  if (j == 0) return Matrix::identity(static_cast<std::size_t>(n));
  for (int k = j; k < n; ++k) {
    Rational binom(1);
    for (int i = 0; i < j; ++i)
      binom *= Rational(k - i) / Rational(i + 1);
    s(static_cast<std::size_t>(k), static_cast<std::size_t>(k - j)) = binom;
  }
  return s;
}

/// The n x k matrix whose i-th row holds the coefficients of x^i reduced mod
/// g (n = k*d); its top block is I_k. It lifts the degree-k power basis to
/// the degree-n one: W v_k(x0) = v_n(x0) for every root x0 of g.
inline Matrix reduced_powers_matrix(const Polynomial& g, int d) {
  if (!g.is_monic() || g.degree() < 1 || !is_irreducible(g))
    throw std::domain_error("reduced_powers_matrix: g must be monic irreducible");
  if (d < 1) throw std::domain_error("reduced_powers_matrix: d must be >= 1");
  const std::size_t k = static_cast<std::size_t>(g.degree());
  const std::size_t n = k * static_cast<std::size_t>(d);
  Matrix w(n, k);
  Polynomial power(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c <= power.degree(); ++c)
      w(i, static_cast<std::size_t>(c)) = power.coeff(static_cast<std::size_t>(c));
    power = (power * Polynomial::x()) % g;
  }
  return w;
}

/// The block bidiagonal canonical block for g^d: C_g on the diagonal, I_k on
/// the superdiagonal.
inline Matrix companion_jordan_block(const Polynomial& g, int d) {
  const std::size_t k = static_cast<std::size_t>(g.degree());
  Matrix cg = companion(g);
  Matrix b(k * d, k * d);
  for (int i = 0; i < d; ++i) {
    b.set_block(i * k, i * k, cg);
    if (i + 1 < d)
      b.set_block(i * k, (i + 1) * k, Matrix::identity(k));
  }
  return b;
}

/// Invertible T with C_{g^d} T = T B, where B is the block bidiagonal form
/// of companion_jordan_block(g, d): T = [W | S_1 W | ... | S_{d-1} W]. The
/// identity is verified exactly before returning.
inline Matrix companion_block_transform(const Polynomial& g, int d) {
  Matrix w = reduced_powers_matrix(g, d); // validates inputs
  const int k = g.degree();
  const int n = k * d;
  Matrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int j = 0; j < d; ++j)
    t.set_block(0, static_cast<std::size_t>(j * k), power_basis_derivative(j, n) * w);
  Matrix cq = companion(pow(g, d));
  if (cq * t != t * companion_jordan_block(g, d) || rank(t) != static_cast<std::size_t>(n))
    throw std::logic_error("companion_block_transform: chain identity failed");
  return t;
}

/// Companion-Jordan decomposition: T_inv * A * T is the direct sum of the
/// canonical blocks, in canonical block order.
struct CompanionJordanDecomposition {
  std::vector<ElementaryBlock> blocks;
  Matrix T;
  Matrix T_inv;

  Matrix canonical_matrix() const {
    Matrix c(T.rows(), T.cols());
    std::size_t off = 0;
    for (const ElementaryBlock& b : blocks) {
      c.set_block(off, off, companion_jordan_block(b.g, b.d));
      off += b.dimension();
    }
    return c;
  }
};

namespace detail {

// Horner evaluation of p(A) v without forming p(A).
inline Matrix apply_poly_to_vector(const Matrix& a, const Polynomial& p, const Matrix& v) {
  Matrix acc(v.rows(), 1);
  for (int i = p.degree(); i >= 0; --i) {
    acc = a * acc;
    const Rational& c = p.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero()) acc += c * v;
  }
  return acc;
}

// Matrix of A restricted to the invariant subspace spanned by the columns of
// basis: A * basis = basis * result.
inline Matrix restrict_to(const Matrix& a, const Matrix& basis) {
  return solve_unique(basis, a * basis);
}

// A vector of maximal order (annihilator = minimal polynomial), assembled
// from one basis vector per prime power of the minimal polynomial. Basis
// vectors are scanned from the highest index down, which maps companion
// matrices onto themselves.
inline std::pair<Matrix, Polynomial> max_order_vector(const Matrix& m) {
  const std::size_t r = m.rows();
  std::vector<Polynomial> orders(r);
  Polynomial mp(1);
  for (std::size_t idx = r; idx-- > 0;) {
    Matrix e(r, 1);
    e(idx, 0) = Rational(1);
    orders[idx] = vector_annihilator(m, e);
    mp = lcm(mp, orders[idx]);
  }
  for (std::size_t idx = r; idx-- > 0;) {
    if (orders[idx] == mp) {
      Matrix e(r, 1);
      e(idx, 0) = Rational(1);
      return {std::move(e), std::move(mp)};
    }
  }
  Matrix v(r, 1);
  for (const auto& [g, mult] : factor_over_Q(mp).factors) {
    Polynomial gpow = pow(g, mult);
    for (std::size_t idx = r; idx-- > 0;) {
      if (!divides(gpow, orders[idx])) continue;
      Matrix e(r, 1);
      e(idx, 0) = Rational(1);
      v += apply_poly_to_vector(m, orders[idx] / gpow, e);
      break;
    }
  }
  return {std::move(v), std::move(mp)};
}

struct CyclicPiece {
  Matrix generator; // ambient column vector
  Polynomial order; // monic annihilator of the generator
};

// Cyclic (Frobenius) decomposition: successive maximal-order generators with
// explicit invariant complements. A cyclic subspace generated by a
// maximal-order vector v splits off along W = { u : phi(A^i u) = 0 }, where
// phi is any functional with phi(A^j v) = delta_{j, deg-1}; the Hankel matrix
// of that pairing is anti-triangular with unit antidiagonal, so Z(v) and W
// intersect trivially.
inline std::vector<CyclicPiece> cyclic_decomposition(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<CyclicPiece> pieces;
  Matrix basis = Matrix::identity(n);
  while (basis.cols() > 0) {
    const std::size_t r = basis.cols();
    Matrix m = restrict_to(a, basis);
    auto [v, f] = max_order_vector(m);
    const std::size_t deg = static_cast<std::size_t>(f.degree());

    pieces.push_back({basis * v, f});
    if (deg == r) break; // the piece is the whole remaining space

    Matrix krylov(r, deg);
    Matrix w = v;
    for (std::size_t j = 0; j < deg; ++j) {
      krylov.set_block(0, j, w);
      if (j + 1 < deg) w = m * w;
    }
    Matrix target(deg, 1);
    target(deg - 1, 0) = Rational(1);
    LinearSolution s = solve_linear(transpose(krylov), target);
    if (s.status == SolveStatus::inconsistent)
      throw std::logic_error("cyclic_decomposition: Krylov functional unsolvable");
    Matrix rows(deg, r);
    Matrix row = transpose(*s.particular);
    for (std::size_t i = 0; i < deg; ++i) {
      rows.set_block(i, 0, row);
      if (i + 1 < deg) row = row * m;
    }
    std::vector<Matrix> ns = nullspace(rows);
    if (ns.size() != r - deg)
      throw std::logic_error("cyclic_decomposition: complement dimension mismatch");
    Matrix next(r, ns.size());
    for (std::size_t j = 0; j < ns.size(); ++j) next.set_block(0, j, ns[j]);
    basis = basis * next;
  }
  return pieces;
}

// Basis of the cyclic subspace generated by u (order q, monic of degree m)
// in which A acts as companion(q): columns t_j = h_{m-1-j}(A) u for the
// Horner prefixes h_i of q.
inline Matrix horner_cyclic_basis(const Matrix& a, const Matrix& u, const Polynomial& q) {
  const std::size_t m = static_cast<std::size_t>(q.degree());
  Matrix t(a.rows(), m);
  Matrix col = u;
  t.set_block(0, m - 1, col);
  for (std::size_t j = m - 1; j-- > 0;) {
    col = a * col + q.coeff(j + 1) * u;
    t.set_block(0, j, col);
  }
  return t;
}

} // namespace detail

/// Invariant factors f_1 | f_2 | ... | f_s of A (monic, product equals the
/// characteristic polynomial), by Smith normal form of xI - A over Q[x] with
/// degree-minimal pivoting.
inline std::vector<Polynomial> invariant_factors(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("invariant_factors: non-square matrix");
  const std::size_t n = a.rows();
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = Polynomial(-a(i, j));
      if (i == j) m[i][j] += Polynomial::x();
    }

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // degree-minimal nonzero pivot in the trailing submatrix
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (m[i][j].is_zero()) continue;
          if (pi == n || m[i][j].degree() < m[pi][pj].degree()) {
            pi = i;
            pj = j;
          }
        }
      if (pi == n) throw std::logic_error("invariant_factors: xI - A became singular");
      std::swap(m[t], m[pi]);
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i][t], m[i][pj]);

      bool reduced = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (m[i][t].is_zero()) continue;
        Polynomial q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < n; ++j) m[i][j] -= q * m[t][j];
        if (!m[i][t].is_zero()) reduced = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (m[t][j].is_zero()) continue;
        Polynomial q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < n; ++i) m[i][j] -= q * m[i][t];
        if (!m[t][j].is_zero()) reduced = false;
      }
      if (!reduced) continue;

      // pivot must divide the whole trailing submatrix
      bool fixed = false;
      for (std::size_t i = t + 1; i < n && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (!divrem(m[i][j], m[t][t]).remainder.is_zero()) {
            for (std::size_t jj = t; jj < n; ++jj) m[t][jj] += m[i][jj];
            fixed = true;
          }
      if (!fixed) break;
    }
  }

  std::vector<Polynomial> out;
  for (std::size_t t = 0; t < n; ++t) {
    Polynomial f = make_monic(m[t][t]);
    if (f.degree() >= 1) out.push_back(std::move(f));
  }
  return out;
}

/// The companion-Jordan form: T_inv * A * T equals the direct sum of block
/// bidiagonal blocks (C_{g_j} diagonal, I superdiagonal), one per elementary
/// divisor g_j^{d_j}, in canonical block order. T * T_inv = I exactly.
inline CompanionJordanDecomposition companion_jordan_form(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("companion_jordan_form: non-square");
  const std::size_t n = a.rows();

  struct Piece {
    ElementaryBlock block;
    Matrix columns; // n x (k*d), mapping block coordinates into the ambient space
  };
  std::vector<Piece> pieces;

  for (const detail::CyclicPiece& cyc : detail::cyclic_decomposition(a)) {
    for (const auto& [g, d] : factor_over_Q(cyc.order).factors) {
      Polynomial q = pow(g, d);
      Matrix u = detail::apply_poly_to_vector(a, cyc.order / q, cyc.generator);
      Matrix basis = detail::horner_cyclic_basis(a, u, q);
      if (a * basis != basis * companion(q))
        throw std::logic_error("companion_jordan_form: cyclic basis identity failed");
      pieces.push_back({{g, d}, basis * companion_block_transform(g, d)});
    }
  }

  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    return canonical_block_less(x.block, y.block);
  });

  CompanionJordanDecomposition out;
  out.T = Matrix(n, n);
  std::size_t off = 0;
  for (Piece& p : pieces) {
    out.T.set_block(0, off, p.columns);
    off += p.block.dimension();
    out.blocks.push_back(std::move(p.block));
  }
  out.T_inv = inverse(out.T);
  if (out.T_inv * a * out.T != out.canonical_matrix())
    throw std::logic_error("companion_jordan_form: verification failed");
  return out;
}

} // namespace pxa
