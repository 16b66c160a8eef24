#include "evplace/cli.hpp"

int main(int argc, char** argv) { return evplace::run_cli(argc, argv); }
