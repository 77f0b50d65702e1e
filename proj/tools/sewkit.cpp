#include "cli.hpp"

int main(int argc, char** argv) { return sewkit::cli::main(argc, argv); }
