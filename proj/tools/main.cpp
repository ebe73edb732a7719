#include <iostream>

#include "rankcrypt/cli.hpp"

int main(int argc, char** argv) { return rankcrypt::run_cli(argc, argv, std::cout, std::cerr); }
