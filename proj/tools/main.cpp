#include <string>
#include <vector>

#include "triplan/report/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return triplan::report::run_cli(args);
}
