#include <string>
#include <vector>

#include "cmair/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cmair::cli::run(args);
}
