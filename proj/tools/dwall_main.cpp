#include "dwall/cli.hpp"

int main(int argc, char** argv) { return dwall::cli::run(argc, argv); }
