#include <iostream>

#include "zslab_cli/cli.hpp"

int main(int argc, char** argv) { return zslab::cli::parse_and_run(argc, argv, std::cout, std::cerr); }
