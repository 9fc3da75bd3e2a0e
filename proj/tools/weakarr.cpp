#include <iostream>

#include "weakarr/cli.hpp"

int main(int argc, char** argv) { return weakarr::run_cli(argc, argv, std::cout, std::cerr); }
