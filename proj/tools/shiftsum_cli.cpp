#include <iostream>

#include "shiftsum/cli.hpp"

int main(int argc, char** argv) { return shiftsum::run_command(argc, argv, std::cout, std::cerr); }
