#include <string>
#include <vector>

#include "ghwlab/cli.hpp"

int main(int argc, char** argv) {
    return ghwlab::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
