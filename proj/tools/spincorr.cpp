#include "spincorr/cli.hpp"

int main(int argc, char** argv) { return spincorr::cli_main(argc, argv); }
