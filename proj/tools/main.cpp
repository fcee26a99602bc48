#include "tdilp/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return tdilp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
