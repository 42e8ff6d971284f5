#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return d3::cli::run_cli(argc, argv, std::cout, std::cerr); }
