#include "stoheat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stoheat/spectral.hpp"
#include "stoheat/weak_error.hpp"

namespace stoheat {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("bounds: alpha must be positive and finite");
}

// Measured suprema of series_ad / (1 + alpha^{-q-1/2}) over the sweep grid,
// frozen with ten percent headroom as regression guards.
struct AdGuard {
    double q;
    double sup;
};

// First-run measurements on the 25-point grid were 0.21411, 0.19947, 0.31858.
constexpr AdGuard kAdGuards[] = {
    {0.6, 0.2355},
    {1.0, 0.2194},
    {2.0, 0.3504},
};

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    const double ratio = hi / lo;
    for (int i = 0; i < points; ++i)
        grid.push_back(lo * std::pow(ratio, static_cast<double>(i) / (points - 1)));
    return grid;
}

} // namespace

SeriesValue series_a1(double alpha, SobolevOrder p, const SeriesControl& ctrl) {
    check_alpha(alpha);
    validate(ctrl);
    const double q = p.value();
    const double c = kModeRate;

    CompensatedSum acc;
    std::uint32_t m = 0;
    while (true) {
        ++m;
        const double lam = eigenvalue(ModeIndex(m));
        const double term = std::pow(lam, -q) * detail::exp_neg(2.0 * lam * alpha);
        acc.add(term);
        double bound = std::numeric_limits<double>::infinity();
        if (m >= 16) {
            bound = term / (4.0 * c * alpha * static_cast<double>(m));
            if (bound <= ctrl.rel_tol * acc.value()) return {acc.value(), bound, m};
        }
        if (m >= ctrl.m_max)
            throw TruncationError("series_a1: tail bound still above rel_tol at m_max modes",
                                  acc.value(), bound, m);
    }
}

SeriesValue series_ad(double alpha, double q, const SeriesControl& ctrl) {
    check_alpha(alpha);
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("series_ad: q must be positive and finite");
    validate(ctrl);
    const double c = kModeRate;
    const double peak = std::sqrt(q / (c * alpha));
    const std::uint32_t start =
        std::max<std::uint32_t>(16, static_cast<std::uint32_t>(std::ceil(peak)) + 2);

    CompensatedSum acc;
    std::uint32_t m = 0;
    while (true) {
        ++m;
        const double lam = eigenvalue(ModeIndex(m));
        const double term = std::pow(lam, q) * detail::exp_neg(lam * alpha);
        acc.add(term);
        double bound = std::numeric_limits<double>::infinity();
        if (m >= start) {
            const double rho = 2.0 * c * alpha * m - 2.0 * q / m;
            bound = term / rho;
            if (bound <= ctrl.rel_tol * acc.value()) return {acc.value(), bound, m};
        }
        if (m >= ctrl.m_max)
            throw TruncationError("series_ad: tail bound still above rel_tol at m_max modes",
                                  acc.value(), bound, m);
    }
}

double lem_at_sum(std::uint32_t n, SobolevOrder p, const GridSpec& grid,
                  const SeriesControl& ctrl) {
    if (n < 1)
        throw std::invalid_argument("lem_at_sum: n must be at least 1");
    const double q = static_cast<double>(n) - p.value();
    CompensatedSum acc;
    for (std::uint32_t j = 1; j < grid.N; ++j)
        acc.add(series_ad(2.0 * grid.h * static_cast<double>(j), q, ctrl).value);
    return std::pow(grid.h, static_cast<double>(n) + 1.0) * acc.value();
}

double a1_envelope(SobolevOrder p) {
    const double q = p.value();
    return std::pow(2.0, q - 1.5) * std::tgamma(0.5 - q) / std::sqrt(kModeRate);
}

std::vector<BoundsRow> run_bounds_suite(SobolevOrder p, const SeriesControl& ctrl) {
    validate(ctrl);
    std::vector<BoundsRow> rows;

    // alpha^{1/2-p} series_a1 against the integral-comparison envelope.
    double a1_sup = 0.0;
    for (double alpha : log_grid(1e-4, 1.0, 25)) {
        const double v = std::pow(alpha, 0.5 - p.value()) * series_a1(alpha, p, ctrl).value;
        a1_sup = std::max(a1_sup, v);
    }
    const double a1_hi = a1_envelope(p);
    rows.push_back({"a1_normalized_sup", p.value(), a1_sup, 0.0, a1_hi, a1_sup <= a1_hi});

    // series_ad / (1 + alpha^{-q-1/2}) against the frozen empirical constants.
    for (const AdGuard& guard : kAdGuards) {
        double sup = 0.0;
        for (double alpha : log_grid(1e-4, 10.0, 25)) {
            const double v = series_ad(alpha, guard.q, ctrl).value /
                             (1.0 + std::pow(alpha, -guard.q - 0.5));
            sup = std::max(sup, v);
        }
        rows.push_back({"ad_normalized_sup", guard.q, sup, 0.0, guard.sup, sup <= guard.sup});
    }

    std::vector<double> hs, vals;
    for (std::uint32_t n_steps = 8; n_steps <= 1024; n_steps *= 2) {
        const GridSpec grid(1.0, n_steps);
        hs.push_back(grid.h);
        vals.push_back(lem_at_sum(1, p, grid, ctrl));
    }
    const double slope = fit_rate(hs, vals).slope;
    const double lo = p.value() + 0.42;
    const double hi = p.value() + 0.65;
    rows.push_back({"step_sum_rate", 1.0, slope, lo, hi, lo <= slope && slope <= hi});

    return rows;
}

} // namespace stoheat
