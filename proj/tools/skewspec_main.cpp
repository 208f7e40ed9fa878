#include <iostream>
#include <string>
#include <vector>

#include "skewspec/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return skewspec::run_command(args, std::cout, std::cerr);
}
