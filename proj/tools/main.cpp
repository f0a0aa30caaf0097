#include <iostream>
#include <vector>

#include "convex/cli_app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return convex::cli::run(args, std::cout, std::cerr);
}
