#include "cli.hpp"

int main(int argc, char** argv) { return wedge::cli::run(argc, argv); }
