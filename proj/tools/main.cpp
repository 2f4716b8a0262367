#include <iostream>
#include <vector>

#include "tdtc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tdtc::cli::run(args, std::cout, std::cerr);
}
