#include <iostream>

#include "euq/cli.h"

int main(int argc, char** argv) { return euq::run_cli(argc, argv, std::cout, std::cerr); }
