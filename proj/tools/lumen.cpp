#include <iostream>

#include "lumen/cli.hpp"

int main(int argc, char** argv) {
    return lumen::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
