// Command-line entry point; all behavior lives in the cli library.

#include "cli/driver.h"

int main(int argc, char** argv) { return cli::run_cli(argc, argv); }
