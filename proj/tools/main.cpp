#include "cpheat/cli.hpp"

int main(int argc, char** argv) { return cpheat::cli_main(argc, argv); }
