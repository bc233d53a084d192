#include "stodom/io.hpp"

#include <iostream>

int main(int argc, char** argv) { return stodom::run_cli(argc, argv, std::cout, std::cerr); }
