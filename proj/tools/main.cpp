#include <iostream>
#include <string>
#include <vector>

#include <kequiv/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kequiv::run_cli(args, std::cout);
}
