#include <iostream>

#include "katsura/cli.hpp"

int main(int argc, char** argv) {
  return katsura::cli::run(argc, argv, std::cout, std::cerr);
}
