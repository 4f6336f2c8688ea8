#include "qftv/cli.hpp"

int main(int argc, char** argv) { return qftv::cli::main_entry(argc, argv); }
