#include <iostream>
#include <string>
#include <vector>

#include "aerotda/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return aerotda::run_cli(args, std::cout, std::cerr);
}
