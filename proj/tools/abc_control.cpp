#include <iostream>

#include "abc/cli/commands.hpp"

int main(int argc, char** argv) { return abc::cli::main_entry(argc, argv, std::cout, std::cerr); }
