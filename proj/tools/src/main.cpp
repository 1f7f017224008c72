#include <iostream>

#include "vexlab_cli/app.hpp"

int main(int argc, char** argv) { return vexlab::cli::run_cli(argc, argv, std::cout, std::cerr); }
