#include "stoheat/ou.hpp"

#include <cmath>
#include <stdexcept>

#include "stoheat/series.hpp"

namespace stoheat {

namespace {

void check_args(double lambda, double theta) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("ou: lambda must be positive");
    if (!(theta >= 0.0))
        throw std::invalid_argument("ou: theta must be nonnegative");
}

} // namespace

double ou_mean(double lambda, double theta, double x) {
    check_args(lambda, theta);
    return detail::exp_neg(lambda * theta) * x;
}

double ou_variance(double lambda, double theta) {
    check_args(lambda, theta);
    return -std::expm1(-2.0 * lambda * theta) / (2.0 * lambda);
}

ValueFunction ou_value_function(double lambda, double theta, double x) {
    check_args(lambda, theta);
    const double e2 = detail::exp_neg(2.0 * lambda * theta);
    ValueFunction f;
    f.u = -std::expm1(-2.0 * lambda * theta) / (2.0 * lambda) + e2 * x * x;
    f.ux = 2.0 * e2 * x;
    f.uxx = 2.0 * e2;
    f.ut = e2 * (1.0 - 2.0 * lambda * x * x);
    f.utx = -4.0 * lambda * e2 * x;
    return f;
}

double ou_generator_residual(double lambda, double theta, double x) {
    const ValueFunction f = ou_value_function(lambda, theta, x);
    return f.ut + lambda * x * f.ux - 0.5 * f.uxx;
}

} // namespace stoheat
