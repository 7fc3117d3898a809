#include "normcheck/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return normcheck::cli::run_main(argc, argv, {std::cout, std::cerr});
}
