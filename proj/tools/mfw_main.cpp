#include <string>
#include <vector>

#include "mfw/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mfw::run_cli(args);
}
