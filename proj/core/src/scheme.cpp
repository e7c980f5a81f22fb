#include "stoheat/scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "stoheat/series.hpp"

namespace stoheat {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("scheme: lambda must be positive and finite");
}

} // namespace

double scheme_step(double lambda, double h, double x, double dw) {
    check_lambda(lambda);
    if (!(h > 0.0))
        throw std::invalid_argument("scheme: h must be positive");
    return (x + dw) / (1.0 + lambda * h);
}

double decay_power(double lambda_h, std::uint64_t k) {
    if (!(lambda_h >= 0.0))
        throw std::invalid_argument("decay_power: lambda_h must be nonnegative");
    if (k == 0) return 1.0;
    if (k <= 64) {
        const double r = 1.0 / (1.0 + lambda_h);
        double acc = 1.0, base = r;
        std::uint64_t e = k;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
    return detail::exp_neg(static_cast<double>(k) * std::log1p(lambda_h));
}

double scheme_variance(double lambda, const GridSpec& grid, std::uint32_t k) {
    check_lambda(lambda);
    if (k > grid.N)
        throw std::invalid_argument("scheme_variance: step index past the grid");
    const double lh = lambda * grid.h;
    const double one_minus_d = -std::expm1(-2.0 * static_cast<double>(k) * std::log1p(lh));
    return one_minus_d / (lambda * (2.0 + lh));
}

double scheme_variance_bound(double lambda) {
    check_lambda(lambda);
    return 0.5 / lambda;
}

InterpMoments interp_moments(double lambda, double h, double v, double tau) {
    check_lambda(lambda);
    if (!(h > 0.0) || !(tau >= 0.0) || !(tau <= h) || !(v >= 0.0))
        throw std::invalid_argument("interp_moments: need 0 <= tau <= h and v >= 0");
    const double f = lambda / (1.0 + lambda * h);
    const double gamma = 1.0 - tau * f;
    const double s = v + tau;
    return {gamma * gamma * s, -f * gamma * s, f * f * s};
}

double coupled_second_moment_error(double lambda, const GridSpec& grid) {
    check_lambda(lambda);
    const double h = grid.h;
    const double lh = lambda * h;
    const double a = scheme_variance(lambda, grid, grid.N);
    const double b = -std::expm1(-2.0 * lambda * grid.T) / (2.0 * lambda);

    // cross term: sum_j r^{N-j} s^{N-j} integral weights collapse to a
    // geometric sum with ratio r s, r = 1/(1+lambda h), s = e^{-lambda h}
    const double r = 1.0 / (1.0 + lh);
    const double one_minus_s = -std::expm1(-lh);
    const double one_minus_rs = (lh - std::expm1(-lh)) * r;
    const double n_log = static_cast<double>(grid.N) * (lh + std::log1p(lh));
    const double one_minus_rs_n = (n_log > 700.0) ? 1.0 : -std::expm1(-n_log);
    const double c = (one_minus_s / lambda) * r * one_minus_rs_n / one_minus_rs;

    const double err = a + b - 2.0 * c;
    return err > 0.0 ? err : 0.0;
}

} // namespace stoheat
