#include <iostream>
#include <string>
#include <vector>

#include "moufang/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return moufang::run_cli(args, std::cout, std::cerr);
}
