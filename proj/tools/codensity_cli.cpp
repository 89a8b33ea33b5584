#include <iostream>
#include <string>
#include <vector>

#include "codensity/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return codensity::cli_main(args, std::cout);
}
