#include <iostream>

#include "qkdrate/cli.hpp"

int main(int argc, char** argv) {
  return qkdrate::cli::main_entry(argc, argv, std::cout, std::cerr);
}
