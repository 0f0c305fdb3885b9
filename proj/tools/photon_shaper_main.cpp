#include <iostream>

#include "photon_shaper/cli.hpp"

int main(int argc, char **argv)
{
    return photon_shaper::cli::run(argc, argv, std::cout, std::cerr);
}
