#include <iostream>

#include "deephole/cli.hpp"

int main(int argc, char** argv) { return dh::runCli(argc, argv, std::cin, std::cout, std::cerr); }
