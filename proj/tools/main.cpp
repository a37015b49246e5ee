#include "gconv/harness.hpp"

int main(int argc, char** argv) { return gconv::cli_dispatch(argc, argv); }
