#include "qrabi/harness.hpp"

int main(int argc, char** argv) { return qrabi::cli_main(argc, argv); }
