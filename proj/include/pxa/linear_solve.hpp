#pragma once

#include "pxa/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pxa {

class singular_matrix_error : public std::domain_error {
public:
  singular_matrix_error(std::size_t rank, std::size_t size)
      : std::domain_error("singular matrix (rank " + std::to_string(rank) + " of " +
                          std::to_string(size) + ")"),
        rank_(rank) {}
  std::size_t rank() const { return rank_; }

private:
  std::size_t rank_;
};

enum class SolveStatus { unique, affine_family, inconsistent };

/// Result of solving M x = rhs over Q. `particular` sets all free variables
/// to zero; every reported vector satisfies its defining equation exactly.
struct LinearSolution {
  SolveStatus status = SolveStatus::inconsistent;
  std::optional<Matrix> particular;
  std::vector<Matrix> nullspace_basis;
};

namespace detail {

// Row echelon data computed by fraction-free (Bareiss) elimination on the
// denominator-cleared rows, then normalized back to a rational RREF.
struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivot_cols;
};

inline Echelon echelon_form(const Matrix& input) {
  const std::size_t nr = input.rows(), nc = input.cols();
  // Clear denominators row by row; row scaling leaves the row space intact.
  std::vector<std::vector<Int>> w(nr, std::vector<Int>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < nc; ++j)
      l = boost::multiprecision::lcm(l, input(i, j).den());
    for (std::size_t j = 0; j < nc; ++j)
      w[i][j] = (Rational(l) * input(i, j)).num();
  }

  std::vector<std::size_t> pivot_cols;
  Int prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < nr; ++col) {
    // pick the nonzero entry of smallest magnitude to limit growth
    std::size_t best = nr;
    for (std::size_t i = row; i < nr; ++i) {
      if (w[i][col] == 0) continue;
      if (best == nr ||
          boost::multiprecision::abs(w[i][col]) < boost::multiprecision::abs(w[best][col]))
        best = i;
    }
    if (best == nr) continue;
    std::swap(w[row], w[best]);
    for (std::size_t i = row + 1; i < nr; ++i) {
      for (std::size_t j = col + 1; j < nc; ++j)
        w[i][j] = (w[row][col] * w[i][j] - w[i][col] * w[row][j]) / prev;
      w[i][col] = 0;
    }
    prev = w[row][col];
    pivot_cols.push_back(col);
    ++row;
  }

  // Rational back-substitution to reduced row echelon form.
  const std::size_t rank = pivot_cols.size();
  Matrix r(nr, nc);
  for (std::size_t i = 0; i < rank; ++i) {
    Rational inv = Rational(w[i][pivot_cols[i]]).reciprocal();
    for (std::size_t j = pivot_cols[i]; j < nc; ++j) r(i, j) = inv * Rational(w[i][j]);
  }
  for (std::size_t i = rank; i-- > 0;) {
    for (std::size_t k = 0; k < i; ++k) {
      Rational f = r(k, pivot_cols[i]);
      if (f.is_zero()) continue;
      for (std::size_t j = pivot_cols[i]; j < nc; ++j)
        r(k, j) -= f * r(i, j);
    }
  }
  return {std::move(r), std::move(pivot_cols)};
}

} // namespace detail

/// Reduced row echelon form.
inline Matrix rref(const Matrix& m) { return detail::echelon_form(m).rref; }

inline std::size_t rank(const Matrix& m) {
  return detail::echelon_form(m).pivot_cols.size();
}

/// Basis of the right null space, one column vector per free column. The
/// basis is in the standard RREF parameterization (free variable set to 1).
inline std::vector<Matrix> nullspace(const Matrix& m) {
  detail::Echelon e = detail::echelon_form(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Matrix v(m.cols(), 1);
    v(f, 0) = Rational(1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      v(e.pivot_cols[i], 0) = -e.rref(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve m x = rhs (rhs a single column), classifying the solution set.
inline LinearSolution solve_linear(const Matrix& m, const Matrix& rhs) {
  if (rhs.cols() != 1) throw std::invalid_argument("solve_linear: rhs must be a column");
  if (rhs.rows() != m.rows()) throw std::invalid_argument("solve_linear: row mismatch");
  detail::Echelon e = detail::echelon_form(hcat(m, rhs));
  LinearSolution out;
  for (std::size_t c : e.pivot_cols)
    if (c == m.cols()) {
      out.status = SolveStatus::inconsistent;
      return out;
    }
  Matrix x(m.cols(), 1);
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
    x(e.pivot_cols[i], 0) = e.rref(i, m.cols());
  out.particular = std::move(x);
  // nullspace from the same echelon (drop the rhs column)
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Matrix v(m.cols(), 1);
    v(f, 0) = Rational(1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      v(e.pivot_cols[i], 0) = -e.rref(i, f);
    out.nullspace_basis.push_back(std::move(v));
  }
  out.status = out.nullspace_basis.empty() ? SolveStatus::unique : SolveStatus::affine_family;
  return out;
}

/// Solve m X = rhs for a matrix right-hand side; requires a consistent system
/// with full column rank (unique solution).
inline Matrix solve_unique(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows()) throw std::invalid_argument("solve_unique: row mismatch");
  detail::Echelon e = detail::echelon_form(hcat(m, rhs));
  for (std::size_t c : e.pivot_cols)
    if (c >= m.cols()) throw std::domain_error("solve_unique: inconsistent system");
  if (e.pivot_cols.size() != m.cols())
    throw std::domain_error("solve_unique: underdetermined system");
  Matrix x(m.cols(), rhs.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = e.rref(i, m.cols() + j);
  return x;
}

/// Exact inverse; throws singular_matrix_error carrying the rank when the
/// matrix is not invertible.
inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: non-square matrix");
  const std::size_t n = m.rows();
  detail::Echelon e = detail::echelon_form(hcat(m, Matrix::identity(n)));
  std::size_t r = 0;
  for (std::size_t c : e.pivot_cols)
    if (c < n) ++r;
  if (r < n) throw singular_matrix_error(r, n);
  return e.rref.submatrix(0, n, n, n);
}

} // namespace pxa
