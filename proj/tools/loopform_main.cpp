#include <iostream>

#include "loopform/cli.hpp"

int main(int argc, char** argv) { return loopform::cli::run(argc, argv, std::cout, std::cerr); }
