#include <unistd.h>

#include <iostream>

#include "iceqp/cli.hpp"

int main(int argc, char** argv) {
  return iceqp::cli::run(argc, argv, std::cin, std::cout, std::cerr, isatty(STDIN_FILENO) != 0);
}
