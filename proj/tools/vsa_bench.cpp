#include <vector>

#include "vsa/cli.hpp"

int main(int argc, char** argv) {
    return vsa::cli_dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
