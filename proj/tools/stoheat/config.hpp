#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stoheat/series.hpp"

namespace stoheat::cli {

/// Invalid command line or configuration document. The message names the
/// violated constraint; the process should exit with status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fully merged experiment description. Field defaults are the documented
/// ones: T = 1, rel_tol = 1e-10, quad_order = 16, m_max = 10^6,
/// samples = 100000, workers = 1, seed = 12345, csv to stdout.
struct ExperimentConfig {
    std::string command;                 ///< weak-error | rate | decompose | mc-validate | bounds | strong-error
    std::vector<double> p{0.0};          ///< Sobolev orders to sweep
    double T = 1.0;                      ///< final time
    std::vector<std::uint32_t> N{8,  16,  32,   64,   128,
                                 256, 512, 1024, 2048, 4096}; ///< step counts to sweep
    SeriesControl series{};              ///< m_max / rel_tol / quad_order
    std::uint64_t samples = 100000;      ///< Monte Carlo replicates
    std::uint32_t workers = 1;           ///< Monte Carlo worker threads
    std::uint64_t seed = 12345;          ///< root seed of the counter-based stream
    std::string out = "-";               ///< output path, "-" = stdout
    std::string format = "csv";          ///< csv | json
};

/// Parse a JSON configuration document on top of `base`: keys present in the
/// document overwrite the corresponding fields, everything else is kept.
/// Unknown keys raise UsageError listing them; a type mismatch raises
/// UsageError naming the offending path.
ExperimentConfig parse_config(const std::string& text, const ExperimentConfig& base = {});

/// Serialize every field to a JSON document; parse_config(serialize_config(c))
/// reproduces c exactly (round-trip stability).
std::string serialize_config(const ExperimentConfig& cfg);

/// Cross-field validation for the selected command. Throws UsageError with
/// the violated constraint named.
void validate_config(const ExperimentConfig& cfg);

/// True for the commands whose sweeps instantiate the h^{p+1/2} machinery and
/// therefore require h = T/N < 1 on every grid in the sweep.
bool needs_unit_step_bound(const std::string& command);

} // namespace stoheat::cli
