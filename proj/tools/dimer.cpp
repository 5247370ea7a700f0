#include <iostream>

#include "dimer/cli.hpp"

int main(int argc, char** argv) { return dimer::cli::run_cli(argc, argv, std::cout, std::cerr); }
