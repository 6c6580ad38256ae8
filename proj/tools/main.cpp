#include "ringwave/cli.hpp"

int main(int argc, char** argv) { return ringwave::run_cli(argc, argv); }
