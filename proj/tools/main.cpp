#include "cli.hpp"

int main(int argc, char** argv) { return ngon::cli::main_entry(argc, argv); }
