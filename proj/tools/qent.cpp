#include <iostream>
#include <string>
#include <vector>

#include "qent/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qent::run_cli(args, std::cout, std::cerr);
}
