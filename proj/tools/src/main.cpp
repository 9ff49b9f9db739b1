#include <iostream>

#include "smr_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smr::cli::run(args, std::cout, std::cerr);
}
