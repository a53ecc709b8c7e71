#include "hcncov/cli_runner.hpp"

int main(int argc, char** argv) { return hcncov::run_cli(argc, argv); }
