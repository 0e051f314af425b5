#include "commands.hpp"

int main(int argc, char** argv) { return recurlab::cli::run_cli(argc, argv); }
