#include <iostream>
#include <string>
#include <vector>

#include "rse/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rse::run_cli(args, std::cout, std::cerr);
}
