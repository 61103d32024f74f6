#include "effham/cli.hpp"

int main(int argc, char** argv) { return effham::run_cli(argc, argv); }
