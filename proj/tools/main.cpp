#include <iostream>
#include <string>
#include <vector>

#include "gerrycircle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gerrycircle::dispatch(args, std::cout, std::cerr);
}
