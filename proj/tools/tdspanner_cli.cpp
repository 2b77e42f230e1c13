#include <iostream>

#include "tdspanner/cli.hpp"

int main(int argc, char** argv) { return tdspanner::run_cli(argc, argv, std::cout, std::cerr); }
