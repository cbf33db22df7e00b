#include "swanson/cli.hpp"

int main(int argc, char** argv) { return swanson::run_cli(argc, argv); }
