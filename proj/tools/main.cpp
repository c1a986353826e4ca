#include <iostream>

#include "ncl/cli.hpp"

int main(int argc, char** argv) {
    return ncl::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
