#include <iostream>
#include <vector>

#include "formality/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return formality::cli::run(args, std::cout, std::cerr);
}
