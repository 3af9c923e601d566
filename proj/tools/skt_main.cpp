#include <iostream>
#include <string>
#include <vector>

#include "skt/config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return skt::run_command(args, std::cout, std::cerr);
}
