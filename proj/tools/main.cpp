#include "tgs/cli.hpp"

int main(int argc, char** argv) { return tgs::run_cli(argc, argv); }
