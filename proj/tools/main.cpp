#include "baum/cli.hpp"

int main(int argc, char** argv) { return baum::run_cli(argc, argv); }
