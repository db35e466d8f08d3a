#include <iostream>

#include "braidcomp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return braidcomp::run(args, std::cout, std::cerr);
}
