#include "mis/cli.hpp"

int main(int argc, char** argv) { return mis::cli::run(argc, argv); }
