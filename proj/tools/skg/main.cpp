#include <iostream>

#include "skg/service/cli.hpp"

int main(int argc, char** argv) {
  return skg::service::run_cli(argc, argv, std::cout, std::cerr);
}
