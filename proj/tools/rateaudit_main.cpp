// rateaudit_main.cpp: rateaudit command-line entry point

#include <iostream>

#include "rateaudit/commands.hpp"

int main(int argc, char** argv) { return rateaudit::run_cli(argc, argv, std::cout, std::cerr); }
