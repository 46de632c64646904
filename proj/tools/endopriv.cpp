#include <iostream>

#include "endopriv/experiment/commands.hpp"

int main(int argc, char** argv) {
    return endopriv::experiment::run_cli(argc, argv, std::cout, std::cerr);
}
