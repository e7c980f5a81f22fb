#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stoheat/series.hpp"
#include "stoheat/types.hpp"

namespace stoheat {

// sum_m lambda_m^{-p} e^{-2 lambda_m alpha}; decays like alpha^{p - 1/2}.
SeriesValue series_a1(double alpha, SobolevOrder p, const SeriesControl& ctrl = {});

// sum_m lambda_m^{q} e^{-lambda_m alpha} for q > 0; decays like alpha^{-q-1/2}.
SeriesValue series_ad(double alpha, double q, const SeriesControl& ctrl = {});

// h^{n+1} sum_{j=1}^{N-1} series_ad(2 j h, n - p): the spectral-sum side of
// the step-term envelope; scales like h^{p+1/2} for fixed n >= 1.
double lem_at_sum(std::uint32_t n, SobolevOrder p, const GridSpec& grid,
                  const SeriesControl& ctrl = {});

// Normalizing constant for series_a1: alpha^{1/2-p} series_a1 <= a1_envelope(p)
// for every alpha > 0 (integral comparison, summand decreasing).
double a1_envelope(SobolevOrder p);

struct BoundsRow {
    std::string name;
    double param;
    double value;
    double lo;
    double hi;
    bool pass;  // lo <= value <= hi
};

// Sweep the normalized series over an alpha grid and fit the h-rate of
// lem_at_sum; every row must pass.
std::vector<BoundsRow> run_bounds_suite(SobolevOrder p, const SeriesControl& ctrl = {});

} // namespace stoheat
