#include <iostream>

#include "uag/cli.hpp"

int main(int argc, char** argv) {
  return uag::cli::run(argc, argv, std::cout, std::cerr);
}
