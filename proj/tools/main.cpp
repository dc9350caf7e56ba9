#include "genfield/cli.hpp"

int main(int argc, char** argv) { return genfield::cli::run_command(argc, argv); }
