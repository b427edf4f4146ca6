#include "phaselab_cli/app.hpp"

int main(int argc, char** argv) {
    return phaselab::cli::run_command(argc, argv);
}
