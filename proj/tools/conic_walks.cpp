#include <iostream>
#include <string>
#include <vector>

#include "conic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return conic::cli::run(args, std::cout, std::cerr);
}
