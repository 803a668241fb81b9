#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return smellrole::cli::run(argc, argv, std::cout, std::cerr); }
