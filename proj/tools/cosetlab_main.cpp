#include <iostream>

#include "cosetlab/cli.hpp"

int main(int argc, char** argv) { return cosetlab::cli::dispatch(argc, argv, std::cout, std::cerr); }
