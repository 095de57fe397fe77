#include <iostream>
#include <string>
#include <vector>

#include "cellgraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cellgraph::cli::run(args, std::cout, std::cerr);
}
