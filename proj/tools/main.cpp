#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dslab::cli::run_cli(argc, argv, std::cout, std::cerr); }
