#pragma once

#include <cstdint>

#include "stoheat/series.hpp"
#include "stoheat/types.hpp"

namespace stoheat {

// Dirichlet Laplacian on (0,1), operator A = -1/2 d^2/dx^2.
// Modes e_m(x) = sqrt(2) sin(m pi x) with eigenvalue lambda_m = (pi m)^2 / 2.

inline constexpr double kModeRate = 4.9348022005446793094;  // pi^2 / 2

double eigenvalue(ModeIndex m);
double eigenfunction(ModeIndex m, double x);

// lambda_m^{-p}, the weight of mode m in the squared H^{-p} norm.
double sobolev_weight(ModeIndex m, SobolevOrder p);

// |u|_{H^{-p}}^2 for a finite coefficient vector (coeffs[i] pairs with mode i+1).
double hneg_norm_sq(const double* coeffs, std::uint32_t n, SobolevOrder p);

// E |X(T)|_{H^{-p}}^2 for the stationary-start-from-zero field at time T:
// sum over modes of lambda^{-p} (1 - e^{-2 lambda T}) / (2 lambda), truncated
// once the crude tail envelope sum_{m>M} lambda_m^{-p-1}/2 meets rel_tol.
SeriesValue exact_field_second_moment(SobolevOrder p, double T, const SeriesControl& ctrl = {});

} // namespace stoheat
