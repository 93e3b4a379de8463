#include "hexwave/cli.hpp"

int main(int argc, char** argv) { return hexwave::cli::run(argc, argv); }
