#include "wsp/cli/commands.hpp"

int main(int argc, char** argv) { return wsp::cli::run_cli(argc, argv); }
