#include <iostream>
#include <string>
#include <vector>

#include "cpc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cpc::cli::run(std::move(args), std::cout, std::cerr);
}
