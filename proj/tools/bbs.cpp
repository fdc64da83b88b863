#include <iostream>

#include "bbs/cli.hpp"

int main(int argc, char** argv) { return bbs::dispatch(argc, argv, std::cin, std::cout, std::cerr); }
