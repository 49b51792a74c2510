#include <iostream>
#include <vector>

#include "ffqe/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ffqe::cli_run(args, std::cout, std::cerr);
}
