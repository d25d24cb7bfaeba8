#include "kobest/cli.hpp"

int main(int argc, char** argv) { return kobest::cli::run(argc, argv); }
