// magnon_bath_main.cpp — command-line entry point.

#include <iostream>
#include <string>
#include <vector>

#include "magnonbath/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return magnonbath::cli::run(std::move(args), std::cout, std::cerr);
}
