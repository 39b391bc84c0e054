#include <iostream>
#include <vector>

#include "meixner/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return meixner::run_cli(args, std::cout, std::cerr);
}
