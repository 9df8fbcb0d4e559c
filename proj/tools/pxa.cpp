#include "pxa/cli.hpp"

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string stdin_data;
  for (const std::string& a : args) {
    if (a == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      stdin_data = ss.str();
      break;
    }
  }
  pxa::cli::CliResult r = pxa::cli::run_cli(args, stdin_data);
  if (!r.out.empty()) std::cout << r.out;
  if (!r.err.empty()) std::cerr << r.err;
  return r.exit_code;
}
