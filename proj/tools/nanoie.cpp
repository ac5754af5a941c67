#include <iostream>

#include "nanoie/cli.hpp"

int main(int argc, char** argv) { return nanoie::cli::run(argc, argv, std::cout, std::cerr); }
