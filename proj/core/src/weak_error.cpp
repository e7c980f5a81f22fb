#include "stoheat/weak_error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stoheat/quadrature.hpp"
#include "stoheat/scheme.hpp"
#include "stoheat/spectral.hpp"

namespace stoheat {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("weak_error: lambda must be positive and finite");
}

// (1+x)^{-2} - e^{-2x} without cancellation: g(x) = e^{2x} - (1+x)^2 is
// x^2 + sum_{n>=3} (2x)^n / n!, so the difference is g e^{-2x} (1+x)^{-2}.
double shrink_gap(double x) {
    const double one_p = 1.0 + x;
    if (x > 350.0) return 1.0 / (one_p * one_p);
    double g;
    if (x < 0.01) {
        g = x * x;
        double pw = 4.0 * x * x;
        double fact = 2.0;
        for (int n = 3; n <= 10; ++n) {
            pw *= 2.0 * x;
            fact *= n;
            g += pw / fact;
        }
    } else {
        g = std::expm1(2.0 * x) - 2.0 * x - x * x;
    }
    return g * std::exp(-2.0 * x) / (one_p * one_p);
}

void ij_at_tau(double lambda, double h, double theta_end, double tau, double v, double& ei,
               double& ej) {
    const double f = lambda / (1.0 + lambda * h);
    const double gamma = 1.0 - tau * f;
    const double s = v + tau;
    const double theta = theta_end + (h - tau);
    const double e2 = 2.0 * detail::exp_neg(2.0 * lambda * theta);
    ei = e2 * gamma * s * lambda * f * (h - tau);
    ej = -e2 * tau * f * (2.0 - tau * f);
}

} // namespace

double per_mode_weak_error(double lambda, const GridSpec& grid) {
    check_lambda(lambda);
    const double lh = lambda * grid.h;
    const double d = decay_power(lh, 2ull * grid.N);
    const double e = detail::exp_neg(2.0 * lambda * grid.T);
    return e / (2.0 * lambda) - d / (lambda * (2.0 + lh)) - grid.h / (2.0 * (2.0 + lh));
}

SeriesValue weak_error(SobolevOrder p, const GridSpec& grid, const SeriesControl& ctrl) {
    validate(ctrl);
    const double q = p.value();
    const double h = grid.h;
    const double a = 2.0 / (kModeRate * h);
    const double coeff = 0.5 * std::pow(kModeRate, -q - 1.0);

    const std::uint32_t start = std::max<std::uint32_t>(
        16, static_cast<std::uint32_t>(std::ceil(2.0 * std::sqrt(a))));
    if (start > ctrl.m_max)
        throw TruncationError("weak_error: step size too small for the mode budget", 0.0,
                              std::numeric_limits<double>::infinity(), 0);

    CompensatedSum partial;
    std::uint32_t m = 0;
    std::uint32_t target = start;
    while (true) {
        while (m < target) {
            ++m;
            const double lam = eigenvalue(ModeIndex(m));
            partial.add(std::pow(lam, -q) * per_mode_weak_error(lam, grid));
        }
        const TailEstimate em = rational_series_tail(q, a, m);
        const double value = partial.value() - coeff * em.value;

        const double lam_next = eigenvalue(ModeIndex(m + 1));
        const double envelope = detail::exp_neg(2.0 * lam_next * grid.T) +
                                decay_power(lam_next * h, 2ull * grid.N);
        const double crude = coeff * std::pow(static_cast<double>(m), -2.0 * q - 1.0) /
                             (2.0 * q + 1.0);
        const double bound = envelope * crude + coeff * em.error_bound;
        if (bound <= ctrl.rel_tol * std::abs(value)) return {value, bound, m};
        if (m >= ctrl.m_max)
            throw TruncationError("weak_error: tail bound still above rel_tol at m_max modes",
                                  value, bound, m);
        target = std::min<std::uint32_t>(2 * m, ctrl.m_max);
    }
}

LastStepDelta last_step_delta(double lambda, SobolevOrder p, const GridSpec& grid) {
    check_lambda(lambda);
    const double h = grid.h;
    const double x = lambda * h;
    const double w = std::pow(lambda, -p.value());
    const double one_p = 1.0 + x;

    LastStepDelta out;
    out.d1 = w * (-std::expm1(-2.0 * x)) / (2.0 * lambda);
    out.d2 = w * h / (one_p * one_p);
    const double v = scheme_variance(lambda, grid, grid.N - 1);
    out.d3 = w * shrink_gap(x) * v;
    out.delta = out.d3 + out.d2 - out.d1;
    return out;
}

IjValues ij_integrands(double lambda, std::uint32_t k, double tau, const GridSpec& grid) {
    check_lambda(lambda);
    if (k >= grid.N)
        throw std::invalid_argument("ij_integrands: step index past the grid");
    if (!(tau >= 0.0) || !(tau <= grid.h))
        throw std::invalid_argument("ij_integrands: tau must lie in [0, h]");
    const double v = scheme_variance(lambda, grid, k);
    const double theta_end = grid.h * static_cast<double>(grid.N - 1 - k);
    IjValues out;
    ij_at_tau(lambda, grid.h, theta_end, tau, v, out.i_term, out.j_term);
    return out;
}

DecompositionReport decompose(SobolevOrder p, const GridSpec& grid, const SeriesControl& ctrl) {
    validate(ctrl);
    const double q = p.value();
    const double h = grid.h;
    const std::uint32_t n_steps = grid.N;

    const std::uint32_t m_we = weak_error(p, grid, ctrl).modes_used;
    // beyond this mode every integrand evaluation underflows to zero
    const double m_quad_d = std::sqrt(350.0 / (kModeRate * h));
    const std::uint32_t m_quad =
        (m_quad_d >= static_cast<double>(ctrl.m_max))
            ? ctrl.m_max
            : static_cast<std::uint32_t>(m_quad_d) + 1;
    const std::uint32_t modes = std::max(m_we, m_quad);

    const GaussLegendre base(ctrl.quad_order);
    const GaussLegendre refined(2 * ctrl.quad_order);

    CompensatedSum direct, last_step, i_base, j_base, i_fine, j_fine;
    for (std::uint32_t m = 1; m <= modes; ++m) {
        const double lam = eigenvalue(ModeIndex(m));
        const double w = std::pow(lam, -q);
        direct.add(w * per_mode_weak_error(lam, grid));
        last_step.add(last_step_delta(lam, p, grid).delta);

        if (2.0 * lam * h > 700.0) continue;
        for (std::uint32_t k = 0; k + 1 < n_steps; ++k) {
            const double v = scheme_variance(lam, grid, k);
            const double theta_end = h * static_cast<double>(n_steps - 1 - k);
            double ib = 0.0, jb = 0.0, ifn = 0.0, jfn = 0.0;
            auto accumulate = [&](const GaussLegendre& rule, double& ai, double& aj) {
                const auto& xs = rule.nodes();
                const auto& ws = rule.weights();
                for (std::size_t g = 0; g < xs.size(); ++g) {
                    const double tau = 0.5 * h * (1.0 + xs[g]);
                    double ei, ej;
                    ij_at_tau(lam, h, theta_end, tau, v, ei, ej);
                    ai += ws[g] * ei;
                    aj += ws[g] * ej;
                }
                ai *= 0.5 * h;
                aj *= 0.5 * h;
            };
            accumulate(base, ib, jb);
            accumulate(refined, ifn, jfn);
            i_base.add(w * ib);
            j_base.add(0.5 * w * jb);
            i_fine.add(w * ifn);
            j_fine.add(0.5 * w * jfn);
        }
    }

    const double qtol = std::max(1e-12, 1e-9 * std::abs(direct.value()));
    const double disc = std::abs(i_base.value() - i_fine.value()) +
                        std::abs(j_base.value() - j_fine.value());
    if (!(disc <= qtol))
        throw QuadratureError("decompose: order-doubling discrepancy " + std::to_string(disc) +
                                  " exceeds tolerance " + std::to_string(qtol),
                              i_base.value() + j_base.value(),
                              i_fine.value() + j_fine.value());

    DecompositionReport rep;
    rep.direct = direct.value();
    rep.last_step_total = last_step.value();
    rep.i_total = i_base.value();
    rep.j_total = j_base.value();
    rep.residual = rep.direct - (rep.last_step_total + rep.i_total + rep.j_total);
    rep.modes_used = modes;
    return rep;
}

SeriesValue strong_error_field(const GridSpec& grid, const SeriesControl& ctrl) {
    validate(ctrl);
    const double h = grid.h;
    const double c = kModeRate;
    const double a1 = 1.0 / (c * h);
    const double a2 = 2.0 / (c * h);
    const double cb = 0.5 / c;          // 1/(2 lambda) asymptote coefficient
    const double cg = 1.0 / (c * c * h);  // geometric-piece coefficient

    const std::uint32_t start = std::max<std::uint32_t>(
        16, static_cast<std::uint32_t>(std::ceil(2.0 * std::sqrt(a2))));
    if (start > ctrl.m_max)
        throw TruncationError("strong_error_field: step size too small for the mode budget",
                              0.0, std::numeric_limits<double>::infinity(), 0);

    CompensatedSum partial;
    std::uint32_t m = 0;
    std::uint32_t target = start;
    while (true) {
        while (m < target) {
            ++m;
            partial.add(coupled_second_moment_error(eigenvalue(ModeIndex(m)), grid));
        }
        const TailEstimate em0 = rational_series_tail(0.0, 0.0, m);
        const TailEstimate em1 = rational_series_tail(1.0, a1, m);
        const TailEstimate em2 = rational_series_tail(1.0, a2, m);
        const double tail = cb * em0.value + cg * em2.value - 2.0 * cg * em1.value;
        const double value = partial.value() + tail;

        const double lam_next = eigenvalue(ModeIndex(m + 1));
        const double envelope = detail::exp_neg(2.0 * lam_next * grid.T) +
                                decay_power(lam_next * h, 2ull * grid.N) +
                                8.0 * detail::exp_neg(lam_next * h);
        const double crude = cb / static_cast<double>(m);
        const double bound = envelope * crude + cb * em0.error_bound +
                             cg * em2.error_bound + 2.0 * cg * em1.error_bound;
        if (bound <= ctrl.rel_tol * std::abs(value)) return {value, bound, m};
        if (m >= ctrl.m_max)
            throw TruncationError(
                "strong_error_field: tail bound still above rel_tol at m_max modes", value,
                bound, m);
        target = std::min<std::uint32_t>(2 * m, ctrl.m_max);
    }
}

RateFit fit_rate(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw std::invalid_argument("fit_rate: need matching lists with at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0) || !(err[i] > 0.0))
            throw std::invalid_argument("fit_rate: h and err must be positive");
        const double x = std::log(h[i]);
        const double y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0))
        throw std::invalid_argument("fit_rate: h values must not all coincide");
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

} // namespace stoheat
