#include <iostream>

#include "lshlab_tools/commands.hpp"

int main(int argc, char** argv) { return lshlab::cli::run(argc, argv, std::cout, std::cerr); }
