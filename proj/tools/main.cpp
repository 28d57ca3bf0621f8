#include "qubath/cli.hpp"

int main(int argc, char** argv) { return qubath::cli_main(argc, argv); }
