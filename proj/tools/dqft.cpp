#include <iostream>

#include "dqft/cli.hpp"

int main(int argc, char** argv) {
    return dqft::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
