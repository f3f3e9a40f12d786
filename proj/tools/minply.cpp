#include <iostream>

#include "minply/cli.hpp"

int main(int argc, char** argv) { return minply::run_cli(argc, argv, std::cout, std::cerr); }
