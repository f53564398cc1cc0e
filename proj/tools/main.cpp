#include "imaug/cli.hpp"

int main(int argc, char** argv) { return imaug::run_cli(argc, argv); }
