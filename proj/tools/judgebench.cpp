#include <iostream>

#include "judgebench/cli.hpp"

int main(int argc, char** argv) { return judgebench::cli::run(argc, argv, std::cout, std::cerr); }
