#pragma once

#include <cstdint>

#include "stoheat/types.hpp"

namespace stoheat {

struct McOptions {
    std::uint64_t samples = 100000;
    std::uint32_t workers = 1;
    std::uint64_t seed = 12345;
};

struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t n;
};

// E[(X^N_N)^2] for one mode under the scheme.
McEstimate mc_mode_second_moment(std::uint32_t m, const GridSpec& grid, const McOptions& opt);

// E[X^N_N] for one mode (zero in law).
McEstimate mc_mode_terminal_mean(std::uint32_t m, const GridSpec& grid, const McOptions& opt);

// E |X^N(T)|_{H^{-p}}^2 over the first `modes` modes.
McEstimate mc_field_norm_sq(SobolevOrder p, std::uint32_t modes, const GridSpec& grid,
                            const McOptions& opt);

// E[(X^N_N)^2 - X(T)^2] for one mode, scheme and exact solution driven by the
// same noise so the difference has small variance.
McEstimate mc_weak_error_mode(std::uint32_t m, const GridSpec& grid, const McOptions& opt);

// E[(X^N(T) - X(T))^2] for one mode under the same coupling.
McEstimate mc_coupled_strong_error(std::uint32_t m, const GridSpec& grid, const McOptions& opt);

// Interpolant moments at tau past step k (compare with interp_moments).
struct InterpMomentEstimates {
    McEstimate ex2;
    McEstimate ebx;
    McEstimate eb2;
};

InterpMomentEstimates mc_interp_moments(std::uint32_t m, std::uint32_t k, double tau,
                                        const GridSpec& grid, const McOptions& opt);

} // namespace stoheat
