#include <iostream>
#include <string>
#include <vector>

#include "hillrep/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hillrep::run_cli(args, std::cout, std::cerr);
}
