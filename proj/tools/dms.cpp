#include "dms/cli/commands.hpp"

int main(int argc, char** argv) { return dms::cli::run(argc, argv); }
