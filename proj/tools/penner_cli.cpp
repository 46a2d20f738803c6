#include "penner/cli_app.hpp"

int main(int argc, char** argv) { return penner::cli::run(argc, argv); }
