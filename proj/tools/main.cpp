#include "frirq/cli.hpp"

int main(int argc, char** argv) { return frirq::cli::run(argc, argv); }
