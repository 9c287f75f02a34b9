#include "ergot/cli.hpp"

int main(int argc, char** argv) { return ergot::cli::main(argc, argv); }
