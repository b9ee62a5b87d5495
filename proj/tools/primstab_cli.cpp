#include <iostream>

#include "primstab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return primstab::run_cli(args, std::cout, std::cerr);
}
