#pragma once

namespace stoheat {

// Scalar Ornstein-Uhlenbeck mode dY = -lambda Y dt + dB, Y(t0) = x.
// Conditional law after time theta >= 0 is Gaussian with the moments below.

double ou_mean(double lambda, double theta, double x);
double ou_variance(double lambda, double theta);

// u(theta, x) = E[ Y(theta)^2 | Y(0) = x ] and its derivatives in (theta, x).
// theta is time remaining, so u solves  u_theta = -lambda x u_x + 1/2 u_xx.
struct ValueFunction {
    double u;
    double ux;
    double uxx;
    double ut;
    double utx;
};

ValueFunction ou_value_function(double lambda, double theta, double x);

// u_theta + lambda x u_x - 1/2 u_xx, identically zero in exact arithmetic.
double ou_generator_residual(double lambda, double theta, double x);

} // namespace stoheat
