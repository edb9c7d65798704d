#include <iostream>

#include "titlegen/cli.hpp"

int main(int argc, char** argv) {
  return titlegen::cli::run(argc, argv, std::cout, std::cerr);
}
