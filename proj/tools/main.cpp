#include "augen/cli.hpp"

int main(int argc, char** argv) { return augen::cli_main(argc, argv); }
