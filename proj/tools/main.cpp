#include <iostream>

#include "etaforge/cli.hpp"

int main(int argc, char** argv) {
  return etaforge::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
