#include <iostream>

#include "latiso/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return latiso::cli_main(args, std::cout, std::cerr);
}
