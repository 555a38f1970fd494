#include <iostream>

#include "hmsa/cli.hpp"

int main(int argc, char** argv) { return hmsa::run_cli(argc, argv, std::cout, std::cerr); }
