#include "sphsamp/cli.hpp"

int main(int argc, char** argv) { return sphsamp::run(argc, argv); }
