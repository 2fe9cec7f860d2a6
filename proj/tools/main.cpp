#include <iostream>

#include "mixmult/cli.hpp"

int main(int argc, char** argv) { return mixmult::run_cli(argc, argv, std::cout, std::cerr); }
