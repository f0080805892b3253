#include <iostream>
#include <string>
#include <vector>

#include "memlang/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return memlang::cli::run(args, std::cout, std::cerr);
}
