#include <iostream>

#include "henselium/commands.hpp"

int main(int argc, char** argv) { return henselium::cli_main(argc, argv, std::cout, std::cerr); }
