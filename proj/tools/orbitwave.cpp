#include "orbitwave/cli.hpp"

int main(int argc, char** argv) { return orbitwave::cli::main(argc, argv); }
