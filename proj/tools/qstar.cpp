#include <iostream>
#include <string>
#include <vector>

#include "qstar/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qstar::run_cli(args, std::cout, std::cerr);
}
