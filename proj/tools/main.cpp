#include "dcurve/cli.hpp"

int main(int argc, char** argv) { return dcurve::cli_run(argc, argv); }
