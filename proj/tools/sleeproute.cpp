#include <iostream>

#include "sleeproute/cli.hpp"

int main(int argc, char** argv) {
    return sleeproute::run_cli(argc, argv, std::cout, std::cerr);
}
