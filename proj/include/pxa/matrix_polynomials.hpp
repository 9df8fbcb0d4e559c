#pragma once

#include "pxa/linear_solve.hpp"
#include "pxa/matrix.hpp"
#include "pxa/polynomial.hpp"

#include <stdexcept>

namespace pxa {

inline Rational trace(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("trace: non-square matrix");
  Rational t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Horner evaluation of p at a square matrix (constant term times identity).
inline Matrix evaluate(const Polynomial& p, const Matrix& x) {
  if (!x.is_square()) throw std::invalid_argument("evaluate: non-square matrix");
  const std::size_t n = x.rows();
  Matrix acc(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    const Rational& c = p.coeff(static_cast<std::size_t>(i));
    if (!c.is_zero())
      for (std::size_t d = 0; d < n; ++d) acc(d, d) += c;
  }
  return acc;
}

/// Characteristic polynomial det(tI - A) by the Faddeev-LeVerrier recurrence;
/// the only divisions are by the integers 1..n.
inline Polynomial charpoly(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  Matrix m = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    }
    c[n - k] = -trace(a * m) / Rational(static_cast<long long>(k));
  }
  return Polynomial(std::move(c));
}

/// Monic generator of { f : f(A) v = 0 }, found by the first linear
/// dependency in the Krylov sequence v, Av, A^2 v, ...
inline Polynomial vector_annihilator(const Matrix& a, const Matrix& v) {
  if (!a.is_square() || v.cols() != 1 || v.rows() != a.rows())
    throw std::invalid_argument("vector_annihilator: shape mismatch");
  if (v.is_zero()) return Polynomial(1);
  Matrix krylov = v;
  Matrix w = v;
  const std::size_t n = a.rows();
  for (std::size_t m = 1; m <= n; ++m) {
    w = a * w;
    LinearSolution s = solve_linear(krylov, w);
    if (s.status != SolveStatus::inconsistent) {
      std::vector<Rational> coeffs(m + 1);
      for (std::size_t i = 0; i < m; ++i) coeffs[i] = -(*s.particular)(i, 0);
      coeffs[m] = Rational(1);
      return Polynomial(std::move(coeffs));
    }
    krylov = hcat(krylov, w);
  }
  throw std::logic_error("vector_annihilator: no dependency within n steps");
}

/// Minimal polynomial as the lcm of the annihilators of the standard basis.
inline Polynomial minpoly(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("minpoly: non-square matrix");
  const std::size_t n = a.rows();
  Polynomial mp(1);
  for (std::size_t i = 0; i < n && mp.degree() < static_cast<int>(n); ++i) {
    Matrix e(n, 1);
    e(i, 0) = Rational(1);
    mp = lcm(mp, vector_annihilator(a, e));
  }
  return mp;
}

/// A is nonderogatory iff its minimal polynomial equals its characteristic
/// polynomial.
inline bool is_nonderogatory(const Matrix& a) { return minpoly(a) == charpoly(a); }

} // namespace pxa
