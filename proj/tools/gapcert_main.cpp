#include <iostream>

#include "gapcert/cli.hpp"

int main(int argc, char **argv) { return gapcert::run_cli(argc, argv, std::cout, std::cerr); }
