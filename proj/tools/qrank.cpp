#include <iostream>

#include "qrank/cli/cli.hpp"

int main(int argc, char** argv) { return qrank::cli::run(argc, argv, std::cout, std::cerr); }
