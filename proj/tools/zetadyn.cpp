#include "zetadyn/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return zetadyn::cli::parse_and_dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
