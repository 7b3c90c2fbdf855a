#include <iostream>

#include "fastkassim/cli.hpp"

int main(int argc, char** argv) { return fastkassim::run_cli(argc, argv, std::cout, std::cerr); }
