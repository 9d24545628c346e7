#include "orbitraise/cli.hpp"

int main(int argc, char** argv) { return orbitraise::run_cli(argc, argv); }
