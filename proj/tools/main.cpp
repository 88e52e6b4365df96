#include "omchaos/cli.hpp"

int main(int argc, char** argv) { return omchaos::cli_main(argc, argv); }
