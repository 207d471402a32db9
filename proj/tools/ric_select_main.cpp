#include <iostream>

#include "ricsel/io.hpp"

int main(int argc, char** argv) {
  return ricsel::run_command(argc, argv, std::cout, std::cerr);
}
