#include <iostream>
#include <string>
#include <vector>

#include "netsync/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return netsync::cli::run(std::move(args), std::cout, std::cerr);
}
