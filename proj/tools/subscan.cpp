#include "subscan/cli.hpp"

int main(int argc, char** argv) { return subscan::run_cli(argc, argv); }
