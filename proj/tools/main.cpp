#include "ncvx/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return ncvx::cli::run(argc, argv, std::cout, std::cerr);
}
