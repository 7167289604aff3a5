#include "mobench/cli.hpp"

int main(int argc, char** argv) { return mobench::cli::main(argc, argv); }
