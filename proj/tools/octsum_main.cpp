#include "octsum/cli.hpp"

int main(int argc, char** argv) { return octsum::cli::run(argc, argv); }
