#include <iostream>

#include "kdvbbm/cli/commands.hpp"

int main(int argc, char** argv) {
  return kdvbbm::cli::run_cli(argc, argv, std::cout, std::cerr);
}
