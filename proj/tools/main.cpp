#include "rmusic/harness.hpp"

int main(int argc, char** argv) { return rmusic::cli_main(argc, argv); }
