#include <iostream>

#include "ctrw/cli.hpp"

int main(int argc, char** argv) { return ctrw::cli::run(argc, argv, std::cout, std::cerr); }
