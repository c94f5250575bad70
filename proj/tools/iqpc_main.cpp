#include "iqpc/cli.hpp"

int main(int argc, char** argv) { return iqpc::run_cli(argc, argv); }
