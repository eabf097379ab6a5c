#include "hypervolt/cli.hpp"

int main(int argc, char** argv) { return hypervolt::cli::main(argc, argv); }
