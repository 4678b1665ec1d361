#include "arithgeo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return arithgeo::cli::run(argc, argv, std::cout, std::cerr); }
