#include <iostream>
#include <string>
#include <vector>

#include "tcnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tcnet::run_cli(args, std::cout, std::cerr);
}
