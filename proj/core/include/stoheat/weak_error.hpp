#pragma once

#include <cstdint>
#include <vector>

#include "stoheat/series.hpp"
#include "stoheat/types.hpp"

namespace stoheat {

// E[(X^N_N)^2] - E[X(T)^2] for one mode, arranged so no cancellation occurs:
//   e^{-2 lambda T}/(2 lambda) - (1+lambda h)^{-2N}/(lambda (2+lambda h))
//     - h/(2 (2+lambda h)),
// which is <= 0 for every lambda, h, N.
double per_mode_weak_error(double lambda, const GridSpec& grid);

// Weak error of the squared H^{-p} norm at T: sum over modes of
// lambda_m^{-p} * per_mode_weak_error, truncated with an analytic tail for the
// dominant -lambda^{-p} h / (2 (2+lambda h)) part (Euler-Maclaurin) and an
// envelope bound for the exponentially small remainder.
SeriesValue weak_error(SobolevOrder p, const GridSpec& grid, const SeriesControl& ctrl = {});

// Final-step contribution E[u(0,X_N)] - E[u(h,X_{N-1})], lambda^{-p}-weighted.
// delta = d3 + d2 - d1 exactly, each d_i >= 0, so |delta| <= d1 + d2 + d3.
struct LastStepDelta {
    double delta;
    double d1;  // (1 - e^{-2 lambda h}) / (2 lambda^{1+p})
    double d2;  // lambda^{-p} h / (1+lambda h)^2
    double d3;  // lambda^{-p} [ (1+lambda h)^{-2} - e^{-2 lambda h} ] E[(X_{N-1})^2]
};

LastStepDelta last_step_delta(double lambda, SobolevOrder p, const GridSpec& grid);

// Integrands of the two step-error terms at time t_k + tau, not yet
// lambda^{-p}-weighted: i_term from the drift mismatch along the interpolant
// (>= 0), j_term from the quadratic-variation mismatch (<= 0, enters with
// weight 1/2).
struct IjValues {
    double i_term;
    double j_term;
};

IjValues ij_integrands(double lambda, std::uint32_t k, double tau, const GridSpec& grid);

// Mode-by-mode identity check: over a fixed truncation,
//   direct = last_step_total + i_total + j_total + residual
// with residual pure quadrature/rounding noise.  j_total carries its 1/2
// weight.  Integrals are Gauss-Legendre at ctrl.quad_order, re-evaluated at
// twice the order; disagreement beyond max(1e-12, 1e-9 |direct|) throws
// QuadratureError.
struct DecompositionReport {
    double direct;
    double last_step_total;
    double i_total;
    double j_total;
    double residual;
    std::uint32_t modes_used;
};

DecompositionReport decompose(SobolevOrder p, const GridSpec& grid, const SeriesControl& ctrl = {});

// E |X^N(T) - X(T)|_{L^2}^2 under coupled noise, summed over modes with
// analytic tails for the three geometric-form pieces.
SeriesValue strong_error_field(const GridSpec& grid, const SeriesControl& ctrl = {});

// Least-squares slope of log(err) against log(h).
struct RateFit {
    double slope;
    double intercept;  // log of the prefactor
};

RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& err);

} // namespace stoheat
