#include <iostream>

#include "hkbec_cli/app.hpp"

int main(int argc, char** argv) {
  return hkbec::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
