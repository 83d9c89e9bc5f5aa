#include "utaylor/cli.hpp"

int main(int argc, char** argv) { return utaylor::run_cli({argv + 1, argv + argc}); }
