#include "okwa_cli.hpp"

int main(int argc, char** argv) { return okwa::cli::run_cli(argc, argv); }
