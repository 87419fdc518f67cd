#include "commands.hpp"

int main(int argc, char** argv) { return netshift_cli::run(argc, argv); }
