#include <iostream>

#include "momlat/cli.hpp"

int main(int argc, char** argv) { return momlat::cli::main(argc, argv, std::cout, std::cerr); }
