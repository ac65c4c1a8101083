#include <iostream>

#include "cleandecomp/cli.hpp"

int main(int argc, char** argv) {
  return cleandecomp::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
