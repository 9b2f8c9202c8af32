#include <iostream>
#include <string>
#include <vector>

#include "cli/dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cvqkd::cli::dispatch(args, std::cout, std::cerr);
}
