// SPDX-License-Identifier: MIT
#include <iostream>

#include "finsler/cli.hpp"

int main(int argc, char** argv) {
    return finsler::cli::run(argc, argv, std::cout, std::cerr);
}
