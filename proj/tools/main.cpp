#include <iostream>

#include "spdml/cli.hpp"

int main(int argc, char** argv) { return spdml::cli::run(argc, argv, std::cout, std::cerr); }
