#pragma once

#include <ostream>

#include "run_spec.hpp"

namespace kernel_eig::cli {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFailed = 2;

/// Executes a parsed spec; documents go to `out`, diagnostics to `err`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parse, run and map exceptions to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kernel_eig::cli
