#include <iostream>

#include "jacsidon/cli.hpp"

int main(int argc, char** argv) { return jacsidon::cli::run_cli(argc, argv, std::cout, std::cerr); }
