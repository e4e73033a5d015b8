#include <iostream>

#include "isogroup/cli.hpp"

int main(int argc, char** argv) {
  return isogroup::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
