#include "ptrng/cli.hpp"

int main(int argc, char** argv) { return ptrng::run_cli(argc, argv); }
