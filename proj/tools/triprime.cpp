#include <iostream>

#include "triprime/cli.hpp"

int main(int argc, char** argv) { return triprime::cli::main(argc, argv, std::cout, std::cerr); }
