#include <iostream>

#include "trollscope/cli.hpp"

int main(int argc, char** argv) { return trollscope::cli::run(argc, argv, std::cout, std::cerr); }
