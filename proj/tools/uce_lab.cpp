#include "uce/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return uce::run_cli(argc, argv, std::cout, std::cerr); }
