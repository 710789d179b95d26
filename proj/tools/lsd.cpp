#include <iostream>

#include "lsd/cli.hpp"

int main(int argc, char** argv) { return lsd::cli::run(argc, argv, std::cout, std::cerr); }
