#include <iostream>
#include <string>
#include <vector>

#include "prosim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prosim::cli_dispatch(args, std::cout, std::cerr);
}
