#include "hubnet/cli.hpp"

int main(int argc, char** argv) { return hubnet::run_cli(argc, argv); }
