#include <iostream>
#include <string>
#include <vector>

#include "phaseswitch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phaseswitch::cli::run(args, std::cout, std::cerr);
}
