#include <iostream>

#include "tropetwist/cli.hpp"

int main(int argc, char** argv) { return tropetwist::run_cli(argc, argv, std::cout, std::cerr); }
