#include <iostream>

#include "gorhom/cli.hpp"

int main(int argc, char** argv) { return gorhom::cli::main(argc, argv, std::cout, std::cerr); }
