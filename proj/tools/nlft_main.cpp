#include "nlft/cli.hpp"

int main(int argc, char** argv) { return nlft::cli::run(argc, argv); }
