#include <exception>
#include <iostream>
#include <vector>

#include "eqcenter/cli.hpp"

int main(int argc, char** argv) {
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    return eqcenter::cli_main(std::move(args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eqcenter::kExitUsage;
  }
}
