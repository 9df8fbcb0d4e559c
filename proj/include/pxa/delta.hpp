#pragma once

#include "pxa/linear_solve.hpp"
#include "pxa/matrix.hpp"
#include "pxa/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace pxa {

/// The divided-difference operator of the block-triangular functional
/// calculus: for square W (a x a) and Y (b x b), delta p (W, Y) maps an
/// a x b matrix Z to the (1,2) block of p([[W, Z], [0, Y]]).
struct DeltaOperator {
  Polynomial p;
  Matrix left;  // W
  Matrix right; // Y

  DeltaOperator(Polynomial poly, Matrix w, Matrix y)
      : p(std::move(poly)), left(std::move(w)), right(std::move(y)) {
    if (!left.is_square() || !right.is_square())
      throw std::invalid_argument("DeltaOperator: W and Y must be square");
  }
};

namespace detail {

inline std::vector<Matrix> cached_powers(const Matrix& m, int count) {
  std::vector<Matrix> p;
  p.reserve(static_cast<std::size_t>(count) + 1);
  p.push_back(Matrix::identity(m.rows()));
  for (int i = 0; i < count; ++i) p.push_back(p.back() * m);
  return p;
}

} // namespace detail

/// Apply the operator: sum_{m>=1} p_m sum_{j=0}^{m-1} W^{m-1-j} Z Y^j,
/// grouped as sum_a W^a Z (sum_b p_{a+b+1} Y^b) over cached powers.
inline Matrix delta_apply(const DeltaOperator& op, const Matrix& z) {
  if (z.rows() != op.left.rows() || z.cols() != op.right.rows())
    throw std::invalid_argument("delta_apply: Z shape mismatch");
  const int ell = op.p.degree();
  Matrix out(z.rows(), z.cols());
  if (ell < 1) return out;
  std::vector<Matrix> wp = detail::cached_powers(op.left, ell - 1);
  std::vector<Matrix> yp = detail::cached_powers(op.right, ell - 1);
  for (int a = 0; a <= ell - 1; ++a) {
    Matrix inner(z.cols(), z.cols());
    bool any = false;
    for (int b = 0; a + b <= ell - 1; ++b) {
      const Rational& c = op.p.coeff(static_cast<std::size_t>(a + b + 1));
      if (c.is_zero()) continue;
      inner += c * yp[static_cast<std::size_t>(b)];
      any = true;
    }
    if (any) out += wp[static_cast<std::size_t>(a)] * z * inner;
  }
  return out;
}

namespace detail {

/// Horner-style recurrence for the same operator, kept as an internal
/// cross-check: Delta q_m = W^{m-1} Z + Delta q_{m-1} * Y.
inline Matrix delta_apply_horner(const DeltaOperator& op, const Matrix& z) {
  const int ell = op.p.degree();
  Matrix out(z.rows(), z.cols());
  if (ell < 1) return out;
  Matrix wpow = Matrix::identity(op.left.rows());
  Matrix dq(z.rows(), z.cols()); // Delta q_m, starting from m = 0
  for (int m = 1; m <= ell; ++m) {
    dq = wpow * z + dq * op.right;
    wpow = wpow * op.left; // W^{m-1} for the next step
    const Rational& c = op.p.coeff(static_cast<std::size_t>(m));
    if (!c.is_zero()) out += c * dq;
  }
  return out;
}

} // namespace detail

/// The k^2 x k^2 matrix M with M vec(Z) = vec(delta p (X1, X1)(Z)):
/// sum_{m>=1} p_m sum_{i=0}^{m-1} (X1^T)^i kron X1^{m-1-i}.
inline Matrix delta_coeff_matrix(const Polynomial& p, const Matrix& x1) {
  if (!x1.is_square()) throw std::invalid_argument("delta_coeff_matrix: non-square X1");
  const std::size_t k = x1.rows();
  const int ell = p.degree();
  Matrix out(k * k, k * k);
  if (ell < 1) return out;
  std::vector<Matrix> xp = detail::cached_powers(x1, ell - 1);
  Matrix xt = transpose(x1);
  std::vector<Matrix> xtp = detail::cached_powers(xt, ell - 1);
  for (int m = 1; m <= ell; ++m) {
    const Rational& c = p.coeff(static_cast<std::size_t>(m));
    if (c.is_zero()) continue;
    for (int i = 0; i <= m - 1; ++i)
      out += c * kron(xtp[static_cast<std::size_t>(i)],
                      xp[static_cast<std::size_t>(m - 1 - i)]);
  }
  return out;
}

/// True iff the chain steps are uniquely solvable for this X1, i.e. the
/// coefficient matrix has full rank.
inline bool is_delta_invertible(const Polynomial& p, const Matrix& x1) {
  Matrix m = delta_coeff_matrix(p, x1);
  return rank(m) == m.rows();
}

} // namespace pxa
