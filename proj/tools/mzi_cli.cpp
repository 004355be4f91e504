#include <iostream>

#include "mzi/cli/app.hpp"

int main(int argc, char** argv) { return mzi::cli::run_cli(argc, argv, std::cout, std::cerr); }
