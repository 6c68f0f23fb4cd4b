#include <iostream>
#include <string>
#include <vector>

#include "gf2to1/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gf2to1::run_cli(args, std::cout, std::cerr);
}
