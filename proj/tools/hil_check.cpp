#include "hil/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return hil::cli::run_main(argc, argv, std::cout, std::cerr); }
