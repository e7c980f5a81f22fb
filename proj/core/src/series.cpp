#include "stoheat/series.hpp"

#include <array>
#include <cmath>

namespace stoheat {

void validate(const SeriesControl& ctrl) {
    if (ctrl.m_max < 16)
        throw std::invalid_argument("SeriesControl: m_max must be at least 16");
    if (!(ctrl.rel_tol > 0.0) || !(ctrl.rel_tol < 1.0))
        throw std::invalid_argument("SeriesControl: rel_tol must lie in (0, 1)");
    if (ctrl.quad_order < 4 || ctrl.quad_order > 64)
        throw std::invalid_argument("SeriesControl: quad_order must lie in [4, 64]");
}

namespace {

// Derivatives of u(x) = x^{-2q}: u^{(n)} = (-1)^n (2q)(2q+1)...(2q+n-1) x^{-2q-n}.
std::array<double, 6> power_derivatives(double q, double x) {
    std::array<double, 6> u{};
    const double s = 2.0 * q;
    double coeff = 1.0;
    double xp = std::pow(x, -s);
    for (int n = 0; n <= 5; ++n) {
        u[n] = coeff * xp;
        coeff *= -(s + n);
        xp /= x;
    }
    return u;
}

// Derivatives of v(x) = (x^2 + a)^{-1}, written out through order five.
std::array<double, 6> rational_derivatives(double a, double x) {
    const double v = 1.0 / (x * x + a);
    const double v2 = v * v, v3 = v2 * v, v4 = v3 * v, v5 = v4 * v, v6 = v5 * v;
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
    return {
        v,
        -2.0 * x * v2,
        -2.0 * v2 + 8.0 * x2 * v3,
        24.0 * x * v3 - 48.0 * x3 * v4,
        24.0 * v3 - 288.0 * x2 * v4 + 384.0 * x4 * v5,
        -720.0 * x * v4 + 3840.0 * x3 * v5 - 3840.0 * x5 * v6,
    };
}

double leibniz(const std::array<double, 6>& u, const std::array<double, 6>& v, int n) {
    static constexpr double binom[6][6] = {
        {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
        {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1},
    };
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += binom[n][i] * u[i] * v[n - i];
    return s;
}

} // namespace

TailEstimate rational_series_tail(double q, double a, std::uint32_t M) {
    if (!(q >= 0.0) || !(a >= 0.0))
        throw std::domain_error("rational_series_tail: q and a must be nonnegative");
    const double X = static_cast<double>(M) + 1.0;
    if (!(X * X >= 4.0 * a))
        throw std::domain_error(
            "rational_series_tail: need (M+1)^2 >= 4a for the integral expansion");

    // integral_X^inf x^{-2q}/(x^2+a) dx as a geometric series in -a/x^2
    const double ratio = -a / (X * X);
    double integral = 0.0;
    double pj = std::pow(X, -(2.0 * q + 1.0));
    double int_err = 0.0;
    for (int j = 0;; ++j) {
        const double term = pj / (2.0 * q + 1.0 + 2.0 * j);
        integral += term;
        pj *= ratio;
        const double next = std::abs(pj) / (2.0 * q + 3.0 + 2.0 * j);
        if (next <= 1e-18 * std::abs(integral) || j >= 200) {
            int_err = next / (1.0 - std::abs(ratio));
            break;
        }
    }

    const auto u = power_derivatives(q, X);
    const auto v = rational_derivatives(a, X);
    const double f0 = u[0] * v[0];
    const double f1 = leibniz(u, v, 1);
    const double f3 = leibniz(u, v, 3);
    const double f5 = leibniz(u, v, 5);

    // sum_{m >= X} f(m) = int + f/2 - f'/12 + f'''/720 - f^(5)/30240 + ...
    const double tail = integral + 0.5 * f0 - f1 / 12.0 + f3 / 720.0;
    const double em_err = 2.0 * std::abs(f5) / 30240.0;
    return {tail, em_err + int_err};
}

} // namespace stoheat
