#include "bbnet/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bbnet::cli::run(argc, argv, std::cout, std::cerr); }
