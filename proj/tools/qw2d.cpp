#include <iostream>

#include "qw2d/cli.hpp"

int main(int argc, char** argv) { return qw2d::run_cli(argc, argv, std::cout, std::cerr); }
