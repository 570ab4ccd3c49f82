#include <iostream>

#include "streamcolor/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return streamcolor::run_cli(argc, argv, std::cout, std::cerr);
}
