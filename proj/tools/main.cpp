#include <iostream>

#include "hlf/cli/run.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return hlf::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
