#include <iostream>
#include <string>
#include <vector>

#include "ffgh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ffgh::run_cli(args, std::cout, std::cerr);
}
