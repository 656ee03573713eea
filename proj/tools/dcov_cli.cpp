#include "dcov/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return dcov::cli::run(argc, argv, std::cout, std::cerr);
}
