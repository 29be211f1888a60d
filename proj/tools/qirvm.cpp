#include <iostream>
#include <string>
#include <vector>

#include "qirvm/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return qirvm::cli::run(args, std::cout, std::cerr);
}
