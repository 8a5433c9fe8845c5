#include <iostream>

#include "kpforge/cli.hpp"

int main(int argc, char** argv) { return kpforge::run_cli(argc, argv, std::cout, std::cerr); }
