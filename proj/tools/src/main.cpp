#include "cli_app.hpp"

int main(int argc, char** argv) { return bufsim::cli::run(argc, argv); }
