#include "homorbit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return homorbit::cli::run(argc, argv, std::cout, std::cerr);
}
