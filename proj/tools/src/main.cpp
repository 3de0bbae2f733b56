#include <iostream>

#include "densecap_cli/commands.hpp"

int main(int argc, char** argv) {
    return densecap::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
