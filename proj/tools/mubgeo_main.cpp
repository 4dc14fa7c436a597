#include "mubgeo/cli.hpp"

int main(int argc, char** argv) { return mubgeo::cli::run(argc, argv); }
