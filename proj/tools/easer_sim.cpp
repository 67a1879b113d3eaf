#include <string>
#include <vector>

#include "easer/scenario.hpp"

int main(int argc, char** argv) {
    return easer::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
