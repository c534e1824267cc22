#include "spm/cli.hpp"

int main(int argc, char** argv) { return spm::cli_main(argc, argv); }
