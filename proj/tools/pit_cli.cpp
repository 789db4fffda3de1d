#include "pit/cli.hpp"

int main(int argc, char** argv) { return pit::cli::run_cli(argc, argv); }
