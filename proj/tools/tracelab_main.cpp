#include "tracelab/cli.hpp"

int main(int argc, char** argv) { return tracelab::run_cli(argc, argv); }
