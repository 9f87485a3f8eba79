#include "gnbg/cli.hpp"

int main(int argc, char** argv) {
    return gnbg::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
