#pragma once

#include "config.hpp"

namespace stoheat::cli {

// Process exit codes. Partial outputs written before a numerical failure are
// kept, with the failing row's status column naming the failure.
inline constexpr int kExitOk = 0;          // computed, all internal checks passed
inline constexpr int kExitCheckFailed = 1; // computed, an internal check failed
inline constexpr int kExitUsage = 2;       // invalid command line / configuration
inline constexpr int kExitNumerical = 3;   // truncation or quadrature failure

/// Execute the command selected in cfg (assumed validated) and write its
/// output tables. Returns one of the exit codes above.
int run_command(const ExperimentConfig& cfg);

} // namespace stoheat::cli
