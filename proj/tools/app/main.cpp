#include "run.hpp"

#include <iostream>

int main(int argc, char** argv) { return isor::app::run(argc, argv, std::cout, std::cerr); }
