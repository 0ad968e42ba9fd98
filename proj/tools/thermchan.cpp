#include <iostream>

#include "thermchan/cli/commands.hpp"

int main(int argc, char** argv) { return thermchan::cli::run_cli(argc, argv, std::cout, std::cerr); }
