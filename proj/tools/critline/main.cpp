#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return critline::cli::dispatch(argc, argv, std::cout, std::cerr); }
