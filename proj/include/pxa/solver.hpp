#pragma once

#include "pxa/canonical.hpp"
#include "pxa/delta.hpp"
#include "pxa/linear_solve.hpp"
#include "pxa/matrix_polynomials.hpp"
#include "pxa/number_field.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pxa {

enum class ChainUniqueness { unique_chain, affine_chain };

/// Per-block solution data: the diagonal block X1 = q(C_g) and the
/// superdiagonal chain X2..Xd of the block upper triangular Toeplitz solution.
struct BlockSolution {
  Polynomial g;
  int d = 1;
  std::vector<Matrix> x_parts;
  NumberFieldElement base_root;
  ChainUniqueness uniqueness = ChainUniqueness::unique_chain;

  /// The assembled block upper triangular Toeplitz matrix.
  Matrix toeplitz() const {
    const std::size_t k = static_cast<std::size_t>(g.degree());
    const std::size_t count = x_parts.size();
    Matrix y(k * count, k * count);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t t = 0; i + t < count; ++t)
        y.set_block(i * k, (i + t) * k, x_parts[t]);
    return y;
  }
};

enum class SolveResultStatus { solutions_found, no_solution, unknown_derogatory };

struct SolveOutcome {
  SolveResultStatus status = SolveResultStatus::no_solution;
  std::vector<Matrix> solutions;
  bool infinite_family = false;
  std::vector<std::vector<NumberFieldElement>> per_block_roots;
  std::string diagnostics;
};

/// Exact check p(x) = a.
inline bool verify(const Polynomial& p, const Matrix& x, const Matrix& a) {
  if (!x.is_square() || x.rows() != a.rows() || x.cols() != a.cols())
    throw std::domain_error("verify: shape mismatch");
  return evaluate(p, x) == a;
}

/// All rational X1 with p(X1) = C_g, one per root mu = q(x) of p in Q[x]/(g):
/// X1 = q(C_g). Complete because any solution commutes with the nonderogatory
/// C_g and is therefore a polynomial in it.
inline std::vector<Matrix> solve_base_block(const Polynomial& p, const Polynomial& g) {
  std::vector<Matrix> out;
  Matrix cg = companion(g);
  for (const NumberFieldElement& mu : roots_in_extension(p, g)) {
    Matrix x1 = evaluate(mu.to_polynomial(), cg);
    if (evaluate(p, x1) != cg)
      throw std::logic_error("solve_base_block: base solution failed verification");
    out.push_back(std::move(x1));
  }
  return out;
}

namespace detail {

inline Matrix block_toeplitz(const std::vector<Matrix>& parts, std::size_t count) {
  const std::size_t k = parts[0].rows();
  Matrix t(k * count, k * count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; i + j < count; ++j)
      t.set_block(i * k, (i + j) * k, parts[j]);
  return t;
}

/// Right-hand side of the reduced superdiagonal equation in its expanded
/// form: -sum_{m=2}^l p_m sum_{i=0}^{m-2} sum_{v=0}^{m-i-2}
/// X1^{m-i-2-v} [X2..X_{j-1}] Ttilde^v [X_{j-1}..X2]^T X1^i, with Ttilde the
/// (j-2)-block Toeplitz. Used as a differential oracle against the stacked
/// formulation (the two are algebraically equal).
inline Matrix chain_rhs_expanded(const Polynomial& p, const std::vector<Matrix>& parts) {
  const std::size_t jm1 = parts.size(); // parts = X1..X_{j-1}
  const std::size_t k = parts[0].rows();
  const int ell = p.degree();
  Matrix z(k, k * (jm1 - 1));
  for (std::size_t t = 1; t < jm1; ++t) z.set_block(0, (t - 1) * k, parts[t]);
  Matrix xt(k * (jm1 - 1), k);
  for (std::size_t t = 1; t < jm1; ++t)
    xt.set_block((jm1 - 1 - t) * k, 0, parts[t]);
  Matrix ttilde = block_toeplitz(parts, jm1 - 1);
  Matrix out(k, k);
  for (int m = 2; m <= ell; ++m) {
    const Rational& pm = p.coeff(static_cast<std::size_t>(m));
    if (pm.is_zero()) continue;
    for (int i = 0; i <= m - 2; ++i)
      for (int v = 0; v <= m - i - 2; ++v)
        out += pm * (pow(parts[0], static_cast<std::size_t>(m - i - 2 - v)) * z *
                     pow(ttilde, static_cast<std::size_t>(v)) * xt *
                     pow(parts[0], static_cast<std::size_t>(i)));
  }
  return -out;
}

struct ChainAttempt {
  std::optional<BlockSolution> solution;
  int failed_step = 0;      // 0 on success
  bool definitive = false;  // failure independent of earlier affine choices
};

inline ChainAttempt run_chain(const Polynomial& p, const Polynomial& g, int d,
                              const Matrix& x1, NumberFieldElement base_root) {
  Matrix cg = companion(g);
  if (x1.rows() != cg.rows() || x1.cols() != cg.cols() || evaluate(p, x1) != cg)
    throw std::domain_error("solve_block_chain: p(x1) != C_g");
  const std::size_t k = static_cast<std::size_t>(g.degree());

  BlockSolution sol{g, d, {x1}, std::move(base_root), ChainUniqueness::unique_chain};
  if (d == 1) return {std::move(sol), 0, false};

  Matrix m = delta_coeff_matrix(p, x1);
  bool affine_seen = false;

  // step 2: the correction block solves delta p (X1, X1)(X2) = I_k
  LinearSolution s2 = solve_linear(m, vec(Matrix::identity(k)));
  if (s2.status == SolveStatus::inconsistent) return {std::nullopt, 2, true};
  if (s2.status == SolveStatus::affine_family) affine_seen = true;
  sol.x_parts.push_back(unvec(*s2.particular, k, k));

  // steps j = 3..d: stacked equation on [X_j; X_{j-1}; ...; X_2]
  for (int j = 3; j <= d; ++j) {
    const std::size_t jm1 = static_cast<std::size_t>(j) - 1;
    Matrix t = block_toeplitz(sol.x_parts, jm1);
    Matrix embed(jm1 * k, k);
    embed.set_block(0, 0, Matrix::identity(k));
    Matrix known(jm1 * k, k);
    for (std::size_t idx = 1; idx < jm1; ++idx)
      known.set_block((jm1 - idx) * k, 0, sol.x_parts[idx]);
    Matrix target(jm1 * k, k);
    target.set_block((jm1 - 1) * k, 0, Matrix::identity(k));

    Matrix rhs = target - delta_apply(DeltaOperator(p, t, x1), known);
    // coefficient matrix of X_j |-> delta p (T, X1)(embed * X_j)
    const int ell = p.degree();
    Matrix coeff(jm1 * k * k, k * k);
    std::vector<Matrix> tp = cached_powers(t, ell - 1);
    std::vector<Matrix> xtp = cached_powers(transpose(x1), ell - 1);
    for (int mm = 1; mm <= ell; ++mm) {
      const Rational& c = p.coeff(static_cast<std::size_t>(mm));
      if (c.is_zero()) continue;
      for (int i = 0; i <= mm - 1; ++i)
        coeff += c * kron(xtp[static_cast<std::size_t>(i)],
                          tp[static_cast<std::size_t>(mm - 1 - i)] * embed);
    }
    LinearSolution s = solve_linear(coeff, vec(rhs));
    if (s.status == SolveStatus::inconsistent) return {std::nullopt, j, !affine_seen};
    if (s.status == SolveStatus::affine_family) affine_seen = true;
    sol.x_parts.push_back(unvec(*s.particular, k, k));
  }

  sol.uniqueness = affine_seen ? ChainUniqueness::affine_chain : ChainUniqueness::unique_chain;
  if (evaluate(p, sol.toeplitz()) != companion_jordan_block(g, d))
    throw std::logic_error("solve_block_chain: assembled block failed verification");
  return {std::move(sol), 0, false};
}

} // namespace detail

/// Extend a base solution X1 of p(X1) = C_g to the full superdiagonal chain
/// X2..Xd; absent when some step is inconsistent.
inline std::optional<BlockSolution> solve_block_chain(const Polynomial& p,
                                                      const Polynomial& g, int d,
                                                      const Matrix& x1) {
  if (d < 1) throw std::domain_error("solve_block_chain: d must be >= 1");
  NumberField field{g};
  // coordinates of X1 in the basis I, C_g, ..., C_g^{k-1}: the first row
  std::vector<Rational> coords(static_cast<std::size_t>(g.degree()));
  for (std::size_t j = 0; j < coords.size(); ++j) coords[j] = x1(0, j);
  return detail::run_chain(p, g, d, x1, field.element(std::move(coords))).solution;
}

/// The full solve: companion-Jordan form, per-block base roots and chains,
/// and the Cartesian product of per-block solutions conjugated back by T.
inline SolveOutcome solve(const Polynomial& p, const Matrix& a) {
  if (p.degree() < 1) throw std::domain_error("solve: polynomial must be nonconstant");
  if (!a.is_square()) throw std::invalid_argument("solve: matrix must be square");

  CompanionJordanDecomposition cj = companion_jordan_form(a);

  bool derogatory = false;
  for (std::size_t i = 0; i < cj.blocks.size() && !derogatory; ++i)
    for (std::size_t j = i + 1; j < cj.blocks.size(); ++j)
      if (cj.blocks[i].g == cj.blocks[j].g) {
        derogatory = true;
        break;
      }

  SolveOutcome out;
  std::ostringstream diag;
  std::vector<std::vector<BlockSolution>> chains(cj.blocks.size());
  bool all_failures_definitive = true;

  for (std::size_t b = 0; b < cj.blocks.size(); ++b) {
    const ElementaryBlock& blk = cj.blocks[b];
    std::vector<NumberFieldElement> roots = roots_in_extension(p, blk.g);
    diag << "block " << b << ": g = " << blk.g.to_string() << ", d = " << blk.d
         << ", base roots: " << roots.size() << "\n";
    if (roots.empty())
      diag << "  no root of p in Q[x]/(g): necessary condition fails\n";
    Matrix cg = companion(blk.g);
    for (const NumberFieldElement& mu : roots) {
      Matrix x1 = evaluate(mu.to_polynomial(), cg);
      detail::ChainAttempt attempt = detail::run_chain(p, blk.g, blk.d, x1, mu);
      if (attempt.solution) {
        if (attempt.solution->uniqueness == ChainUniqueness::affine_chain)
          diag << "  root " << mu.to_string()
               << ": chain solvable but not unique (singular coefficient matrix); "
                  "zero free variables chosen\n";
        chains[b].push_back(std::move(*attempt.solution));
      } else {
        diag << "  root " << mu.to_string() << ": step " << attempt.failed_step
             << " inconsistent";
        if (!attempt.definitive) {
          diag << " (after an affine step; other family members unexplored)";
          all_failures_definitive = false;
        }
        diag << "\n";
      }
    }
    out.per_block_roots.push_back(std::move(roots));
  }

  bool complete = true;
  for (const auto& c : chains)
    if (c.empty()) complete = false;

  if (complete) {
    out.status = SolveResultStatus::solutions_found;
    const std::size_t n = a.rows();
    std::vector<std::size_t> idx(chains.size(), 0);
    for (;;) {
      Matrix y(n, n);
      std::size_t off = 0;
      bool affine = false;
      for (std::size_t b = 0; b < chains.size(); ++b) {
        const BlockSolution& bs = chains[b][idx[b]];
        y.set_block(off, off, bs.toeplitz());
        off += cj.blocks[b].dimension();
        affine = affine || bs.uniqueness == ChainUniqueness::affine_chain;
      }
      Matrix x = cj.T * y * cj.T_inv;
      if (!verify(p, x, a)) throw std::logic_error("solve: solution failed verification");
      out.solutions.push_back(std::move(x));
      out.infinite_family = out.infinite_family || affine;
      // odometer, last block fastest
      std::size_t pos = chains.size();
      bool done = false;
      for (;;) {
        if (pos == 0) {
          done = true;
          break;
        }
        --pos;
        if (++idx[pos] < chains[pos].size()) break;
        idx[pos] = 0;
      }
      if (done) break;
    }
    if (derogatory)
      diag << "derogatory input: the per-block enumeration need not be exhaustive\n";
    if (out.infinite_family)
      diag << "at least one chain lies in an affine family: infinitely many solutions; "
              "one representative per family returned\n";
  } else if (derogatory) {
    out.status = SolveResultStatus::unknown_derogatory;
    diag << "derogatory input and the per-block construction failed: a solution may "
            "exist that is not of per-block form\n";
  } else {
    out.status = SolveResultStatus::no_solution;
    if (!all_failures_definitive)
      diag << "note: some failures came after singular-but-solvable steps; only the "
              "zero-free-variable representative was explored\n";
  }
  out.diagnostics = diag.str();
  return out;
}

} // namespace pxa
