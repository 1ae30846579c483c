#include <iostream>
#include <string>
#include <vector>

#include "lginet/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lginet::run_cli(args, std::cout, std::cerr);
}
