#include <iostream>
#include <string>
#include <vector>

#include "stablat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stablat::run(args, std::cout, std::cerr);
}
