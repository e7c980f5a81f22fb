#pragma once

#include <cstdint>

#include "stoheat/types.hpp"

namespace stoheat {

// Drift-implicit Euler for one spectral mode:
//   X_{k+1} = (X_k + dW_k) / (1 + lambda h),   X_0 = 0.

double scheme_step(double lambda, double h, double x, double dw);

// (1 + lambda_h)^{-k}, stable for any k (binary powers for small k,
// exp(-k log1p) beyond that).
double decay_power(double lambda_h, std::uint64_t k);

// E[(X^N_k)^2]; closed form (1 - (1+lambda h)^{-2k}) / (2 lambda + lambda^2 h).
double scheme_variance(double lambda, const GridSpec& grid, std::uint32_t k);

// Uniform-in-(k, h) bound 1 / (2 lambda) on scheme_variance.
double scheme_variance_bound(double lambda);

// Moments of the continuous interpolant at tau in [0, h] past step k, given
// v = E[(X^N_k)^2]: the interpolant is (1 - tau f)(X_k + W_tau) with
// f = lambda/(1+lambda h), and b = -f (X_k + W_tau) is the frozen drift.
struct InterpMoments {
    double ex2;  // E[ Xbar^2 ]      = gamma^2 (v + tau)
    double ebx;  // E[ b Xbar ]      = -f gamma (v + tau)
    double eb2;  // E[ b^2 ]         = f^2 (v + tau)
};

InterpMoments interp_moments(double lambda, double h, double v, double tau);

// E[(X^N(T) - X(T))^2] for one mode under the coupled driving noise,
// evaluated in closed form (geometric sum for the cross term).
double coupled_second_moment_error(double lambda, const GridSpec& grid);

} // namespace stoheat
