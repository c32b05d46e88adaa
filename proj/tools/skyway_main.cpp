#include <iostream>

#include "skyway/cli.hpp"

int main(int argc, char** argv) {
  return skyway::run(argc, argv, std::cout, std::cerr);
}
