#include <string>
#include <vector>

#include "tempcast/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return tempcast::run_cli(args);
}
