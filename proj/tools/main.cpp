#include "hds/harness/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hds::harness::cli_main(argc, argv, std::cout, std::cerr); }
