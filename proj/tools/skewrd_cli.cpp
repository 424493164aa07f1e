#include <iostream>

#include "skewrd/app.hpp"

int main(int argc, char** argv) { return skewrd::run_cli(argc, argv, std::cout, std::cerr); }
