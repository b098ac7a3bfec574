#include <iostream>

#include "anisolag/cli.hpp"

int main(int argc, char** argv) { return anisolag::cli::run(argc, argv, std::cout, std::cerr); }
