#include "lola/driver.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return lola::run_cli(argc, argv, std::cout, std::cerr);
}
