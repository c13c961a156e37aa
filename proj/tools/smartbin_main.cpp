#include <iostream>

#include "smartbin/cli.hpp"

int main(int argc, char** argv) {
    return smartbin::cli::run(argc, argv, std::cout, std::cerr);
}
