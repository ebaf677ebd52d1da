#include "mpade/cli.hpp"

int main(int argc, char** argv) { return mpade::cli::run(argc, argv); }
