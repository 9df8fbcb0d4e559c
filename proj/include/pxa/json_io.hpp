#pragma once

#include "pxa/canonical.hpp"
#include "pxa/factorization.hpp"
#include "pxa/matrix.hpp"
#include "pxa/number_field.hpp"
#include "pxa/polynomial.hpp"
#include "pxa/solver.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace pxa {

class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exact rational from a JSON value: a strict `[-]digits[/digits]` string or
/// a JSON integer. Floating-point literals are rejected.
inline Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    auto r = Rational::parse(v.get<std::string>());
    if (!r) throw parse_error(where + ": '" + v.get<std::string>() + "' is not a rational");
    return *r;
  }
  if (v.is_number_integer()) return Rational(Int(v.get<long long>()));
  if (v.is_number_float())
    throw parse_error(where + ": floating-point literals are not accepted");
  throw parse_error(where + ": expected a rational string");
}

inline nlohmann::json rational_to_json(const Rational& r) { return r.to_string(); }

/// Coefficient list, low-to-high: ["1","0","0","1"] is 1 + x^3.
inline Polynomial poly_from_json(const nlohmann::json& v) {
  if (!v.is_array()) throw parse_error("polynomial: expected a coefficient array");
  std::vector<Rational> c;
  c.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    c.push_back(rational_from_json(v[i], "polynomial coefficient " + std::to_string(i)));
  return Polynomial(std::move(c));
}

inline nlohmann::json poly_to_json(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i <= p.degree(); ++i)
    arr.push_back(p.coeff(static_cast<std::size_t>(i)).to_string());
  return arr;
}

/// Matrix format: {"rows": [["1","1/2"],["-2","1"]]}.
inline Matrix matrix_from_json(const nlohmann::json& v) {
  if (!v.is_object() || !v.contains("rows") || !v["rows"].is_array())
    throw parse_error("matrix: expected an object with a 'rows' array");
  const nlohmann::json& rows = v["rows"];
  if (rows.empty()) throw parse_error("matrix: 'rows' must be nonempty");
  std::size_t nr = rows.size();
  if (!rows[0].is_array() || rows[0].empty())
    throw parse_error("matrix: rows must be nonempty arrays");
  std::size_t nc = rows[0].size();
  Matrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (!rows[i].is_array() || rows[i].size() != nc)
      throw parse_error("matrix: row " + std::to_string(i) + " has inconsistent length");
    for (std::size_t j = 0; j < nc; ++j)
      m(i, j) = rational_from_json(
          rows[i][j], "matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return m;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"rows", std::move(rows)}};
}

inline nlohmann::json nf_element_to_json(const NumberFieldElement& e) {
  nlohmann::json coords = nlohmann::json::array();
  for (const Rational& c : e.coords()) coords.push_back(c.to_string());
  return nlohmann::json{{"coords", std::move(coords)},
                        {"modulus", poly_to_json(e.field().modulus())}};
}

inline nlohmann::json factorization_to_json(const Factorization& f) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [g, m] : f.factors)
    factors.push_back({{"poly", poly_to_json(g)}, {"multiplicity", m}});
  return nlohmann::json{{"unit", f.unit.to_string()}, {"factors", std::move(factors)}};
}

inline nlohmann::json decomposition_to_json(const CompanionJordanDecomposition& d) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const ElementaryBlock& b : d.blocks)
    blocks.push_back({{"g", poly_to_json(b.g)}, {"d", b.d}});
  return nlohmann::json{{"blocks", std::move(blocks)},
                        {"T", matrix_to_json(d.T)},
                        {"T_inv", matrix_to_json(d.T_inv)}};
}

inline nlohmann::json outcome_to_json(const SolveOutcome& o, bool emit_all) {
  nlohmann::json j;
  switch (o.status) {
    case SolveResultStatus::solutions_found: j["status"] = "solutions_found"; break;
    case SolveResultStatus::no_solution: j["status"] = "no_solution"; break;
    case SolveResultStatus::unknown_derogatory: j["status"] = "unknown_derogatory"; break;
  }
  j["infinite_family"] = o.infinite_family;
  j["solution_count"] = o.solutions.size();
  nlohmann::json sols = nlohmann::json::array();
  for (std::size_t i = 0; i < o.solutions.size() && (emit_all || i < 1); ++i)
    sols.push_back(matrix_to_json(o.solutions[i]));
  j["solutions"] = std::move(sols);
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& roots : o.per_block_roots) {
    nlohmann::json rs = nlohmann::json::array();
    for (const NumberFieldElement& mu : roots) rs.push_back(nf_element_to_json(mu));
    blocks.push_back(std::move(rs));
  }
  j["per_block_roots"] = std::move(blocks);
  j["diagnostics"] = o.diagnostics;
  return j;
}

} // namespace pxa
