#include <iostream>

#include "spaceform/cli.hpp"

int main(int argc, char** argv) { return spaceform::cli::main(argc, argv, std::cout, std::cerr); }
