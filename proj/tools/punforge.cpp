#include <iostream>

#include "punforge/cli.hpp"

int main(int argc, char** argv) {
  return punforge::cli::run(argc, argv, std::cout, std::cerr);
}
