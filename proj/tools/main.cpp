#include "transpec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return transpec::cli::run(argc, argv, std::cout, std::cerr); }
