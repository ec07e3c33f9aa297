#include "tcelldyn/cli.hpp"

int main(int argc, char** argv) {
    return tcelldyn::cli::run(argc, argv);
}
