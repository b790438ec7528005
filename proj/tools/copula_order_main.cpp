#include <iostream>

#include "copula_order/cli.hpp"

int main(int argc, char** argv) { return copord::run_cli(argc, argv, std::cout, std::cerr); }
