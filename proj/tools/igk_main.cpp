#include "igk/cli/commands.hpp"

int main(int argc, char** argv) { return igk::cli::run_cli(argc, argv); }
