#include <iostream>
#include <string>
#include <vector>

#include "semsense/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return semsense::cli::run(std::move(args), std::cout, std::cerr);
}
