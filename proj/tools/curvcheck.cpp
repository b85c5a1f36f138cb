#include <iostream>

#include "curvcheck/cli.hpp"

int main(int argc, char** argv) { return curvcheck::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
