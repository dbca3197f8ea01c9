#include <iostream>

#include "abelsup/cli.hpp"

int main(int argc, char** argv) { return abelsup::run_cli(argc, argv, std::cout, std::cerr); }
