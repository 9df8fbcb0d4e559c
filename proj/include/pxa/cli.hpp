#pragma once

#include "pxa/json_io.hpp"
#include "pxa/pxa.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pxa::cli {

enum class Command { solve, cjform, roots, factor, verify };

/// A fully parsed request, ready for dispatch.
struct Request {
  Command command = Command::solve;
  std::optional<Polynomial> polynomial;
  std::optional<Polynomial> modulus; // `roots` only
  std::optional<Matrix> matrix;
  std::optional<Matrix> x; // `verify` only
  bool emit_all = true;
};

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitUnknownDerogatory = 3;

/// Dispatch a request; returns the exit code and writes one JSON document.
inline int run(const Request& req, std::string& out) {
  nlohmann::json j;
  int code = kExitOk;
  switch (req.command) {
    case Command::solve: {
      SolveOutcome o = solve(*req.polynomial, *req.matrix);
      j = outcome_to_json(o, req.emit_all);
      if (o.status == SolveResultStatus::no_solution) code = kExitNoSolution;
      if (o.status == SolveResultStatus::unknown_derogatory) code = kExitUnknownDerogatory;
      break;
    }
    case Command::cjform:
      j = decomposition_to_json(companion_jordan_form(*req.matrix));
      break;
    case Command::roots: {
      if (!req.modulus->is_monic())
        throw parse_error("roots: the modulus must be monic");
      std::vector<NumberFieldElement> rs = roots_in_extension(*req.polynomial, *req.modulus);
      nlohmann::json arr = nlohmann::json::array();
      for (const NumberFieldElement& mu : rs) arr.push_back(nf_element_to_json(mu));
      j = nlohmann::json{{"modulus", poly_to_json(*req.modulus)}, {"roots", std::move(arr)}};
      break;
    }
    case Command::factor:
      j = factorization_to_json(factor_over_Q(*req.polynomial));
      break;
    case Command::verify: {
      bool ok = verify(*req.polynomial, *req.x, *req.matrix);
      j = nlohmann::json{{"verified", ok}};
      if (!ok) code = kExitNoSolution;
      break;
    }
  }
  out = j.dump(2) + "\n";
  return code;
}

struct CliResult {
  int exit_code = 0;
  std::string out; // stdout payload (JSON or help text)
  std::string err; // stderr payload
};

namespace detail {

inline nlohmann::json read_json_source(const std::string& source, const std::string& stdin_data) {
  std::string text;
  if (source == "-") {
    text = stdin_data;
  } else {
    std::ifstream in(source);
    if (!in) throw parse_error("cannot open file: " + source);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed JSON in " + source);
  return j;
}

inline Polynomial poly_from_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed polynomial: " + text);
  return poly_from_json(j);
}

} // namespace detail

/// Command-line front end. `stdin_data` stands in for standard input when a
/// matrix argument is "-".
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::string& stdin_data = "") {
  CLI::App app{"Exact rational matrix algebra: companion-Jordan canonical forms and "
               "rational solutions X of polynomial matrix equations p(X) = A."};
  app.require_subcommand(1);
  app.fallthrough(); // accept global flags after the subcommand name

  std::string poly_text, modulus_text, matrix_source, x_source, output_path;
  bool emit_all = true;

  auto add_poly = [&](CLI::App* cmd) {
    cmd->add_option("--poly", poly_text,
                    "polynomial as a JSON coefficient list, low to high; entries are "
                    "rational strings or integers, e.g. [\"1\",\"0\",\"1/2\"]")
        ->required();
  };
  auto add_matrix = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", matrix_source,
                    "matrix JSON file ({\"rows\": [[...], ...]}), or - for stdin")
        ->required();
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "find all rational X with p(X) = A");
  add_poly(solve_cmd);
  add_matrix(solve_cmd);
  solve_cmd->add_flag("--emit-all,!--no-emit-all", emit_all,
                      "emit every solution (default) or only the first");

  CLI::App* cjform_cmd =
      app.add_subcommand("cjform", "companion-Jordan canonical form of A");
  add_matrix(cjform_cmd);

  CLI::App* roots_cmd =
      app.add_subcommand("roots", "all mu in Q[x]/(g) with p(mu) = class of x");
  add_poly(roots_cmd);
  roots_cmd->add_option("--modulus", modulus_text,
                        "monic irreducible g as a JSON coefficient list")
      ->required();

  CLI::App* factor_cmd = app.add_subcommand("factor", "factor p into irreducibles over Q");
  add_poly(factor_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check p(X) = A exactly");
  add_poly(verify_cmd);
  verify_cmd->add_option("--x", x_source, "candidate solution X (JSON file or -)")
      ->required();
  add_matrix(verify_cmd);

  app.add_option("--output", output_path, "write the JSON result to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  CliResult result;
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    // flag/usage problems are all input errors under the exit-code contract
    result.exit_code = code == 0 ? kExitOk : kExitError;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    Request req;
    if (app.got_subcommand(solve_cmd)) req.command = Command::solve;
    if (app.got_subcommand(cjform_cmd)) req.command = Command::cjform;
    if (app.got_subcommand(roots_cmd)) req.command = Command::roots;
    if (app.got_subcommand(factor_cmd)) req.command = Command::factor;
    if (app.got_subcommand(verify_cmd)) req.command = Command::verify;
    req.emit_all = emit_all;
    if (!poly_text.empty()) req.polynomial = detail::poly_from_text(poly_text);
    if (!modulus_text.empty()) req.modulus = detail::poly_from_text(modulus_text);
    if (!matrix_source.empty())
      req.matrix = matrix_from_json(detail::read_json_source(matrix_source, stdin_data));
    if (!x_source.empty())
      req.x = matrix_from_json(detail::read_json_source(x_source, stdin_data));

    std::string payload;
    result.exit_code = run(req, payload);
    if (!output_path.empty()) {
      std::ofstream out(output_path);
      if (!out) throw parse_error("cannot write file: " + output_path);
      out << payload;
    } else {
      result.out = payload;
    }
  } catch (const std::exception& e) {
    result.exit_code = kExitError;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

} // namespace pxa::cli
