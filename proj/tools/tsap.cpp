#include <iostream>

#include "tsap/cli.hpp"

int main(int argc, char** argv) {
  return tsap::cli::run(argc, argv, std::cout, std::cerr);
}
