#include "kgo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kgo::cli::main_entry(argc, argv, std::cout, std::cerr); }
