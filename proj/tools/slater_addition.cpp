#include <iostream>
#include <string>
#include <vector>

#include "slater/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return slater::run_cli(args, std::cout, std::cerr);
}
