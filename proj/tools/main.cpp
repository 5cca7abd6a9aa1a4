#include "bll/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return bll::run_cli(argc, argv, std::cout, std::cerr);
}
