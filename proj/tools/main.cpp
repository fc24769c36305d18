#include <string>
#include <vector>

#include "canarc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return canarc::cli::run(args);
}
