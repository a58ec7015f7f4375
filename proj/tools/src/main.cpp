#include "pba_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pba::cli::run(args, std::cin, std::cout, std::cerr);
}
