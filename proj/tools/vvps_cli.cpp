#include "vvps/cli.hpp"

int main(int argc, char** argv) { return vvps::cli::main(argc, argv); }
