#include "qdx/cli.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qdx::cli_run(args, std::cout, std::cerr);
}
