#include <iostream>

#include "fbmc/harness.hpp"

int main(int argc, char** argv) { return fbmc::run_cli(argc, argv, std::cout, std::cerr); }
