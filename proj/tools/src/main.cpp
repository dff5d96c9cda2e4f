#include <iostream>

#include "cfma/cli/run.hpp"

int main(int argc, char** argv) { return cfma::cli::run(argc, argv, std::cout, std::cerr); }
