#include <iostream>
#include <string>
#include <vector>

#include "freikalk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return freikalk::run(args, std::cout, std::cerr);
}
