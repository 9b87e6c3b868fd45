#include "fluxpulse/cli.hpp"

int main(int argc, char** argv) {
    return fluxpulse::run_cli(argc, argv);
}
