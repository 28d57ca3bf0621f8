#pragma once

namespace qubath {

/// Entry point behind the qubath binary. Exit codes: 0 success,
/// 1 validation failure, 2 numerical/runtime failure, 64 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace qubath
