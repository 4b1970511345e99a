#include <iostream>

#include "cliffbie/cli.hpp"

int main(int argc, char** argv) { return cliffbie::cli::run(argc, argv, std::cout, std::cerr); }
