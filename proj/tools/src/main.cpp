#include <iostream>

#include "tsn_cli/cli.hpp"

int main(int argc, char** argv) { return tsn::cli::run(argc, argv, std::cout, std::cerr); }
