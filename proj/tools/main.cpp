#include "nbbl1/cli/commands.hpp"

int main(int argc, char** argv) { return nbbl1::cli::run_cli(argc, argv); }
