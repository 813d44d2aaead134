#include <iostream>
#include <string>
#include <vector>

#include "lspace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lspace::run_cli(args, std::cout, std::cerr);
}
