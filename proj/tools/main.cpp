#include <string>
#include <vector>

#include "benfordsep/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return benfordsep::run_cli(args);
}
