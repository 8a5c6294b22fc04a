#include <iostream>

#include "ontoverse/cli.hpp"

int main(int argc, char** argv) {
    return ontoverse::cli::run(argc, argv, std::cout, std::cerr);
}
