#include "sqw_cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
    return sqw::cli::run_cli(argc, argv, std::cout, std::cerr);
}
