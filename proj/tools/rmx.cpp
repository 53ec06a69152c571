#include <iostream>

#include "rmx/cli.hpp"

int main(int argc, char** argv) { return rmx::run_cli(argc, argv, std::cout, std::cerr); }
