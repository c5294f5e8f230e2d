#include "lylab/tools/cli.hpp"

int main(int argc, char** argv) { return lylab::tools::run(argc, argv); }
