#include <iostream>

#include "tcon/cli/app.hpp"

int main(int argc, char** argv) { return tcon::cli::run(argc, argv, std::cout, std::cerr); }
