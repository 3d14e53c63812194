#include <iostream>

#include "ratcat_cli.hpp"

int main(int argc, char** argv) { return ratcat::cli::run_cli(argc, argv, std::cout, std::cerr); }
