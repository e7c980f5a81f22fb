#include "stoheat/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stoheat/rng.hpp"
#include "stoheat/scheme.hpp"
#include "stoheat/series.hpp"
#include "stoheat/spectral.hpp"

namespace stoheat {

namespace {

constexpr std::uint64_t kBlock = 1024;

void check_options(const McOptions& opt) {
    if (opt.samples == 0 || opt.samples > 0xFFFFFFFFull)
        throw std::invalid_argument("montecarlo: samples must lie in [1, 2^32 - 1]");
    if (opt.workers == 0 || opt.workers > 256)
        throw std::invalid_argument("montecarlo: workers must lie in [1, 256]");
}

// Fixed-size blocks with per-block partial sums, dispatched by an atomic
// cursor and merged in block order, so the result is bit-identical for any
// worker count.
template <class F>
McEstimate run_blocked(const McOptions& opt, F&& sample) {
    check_options(opt);
    const std::uint64_t n = opt.samples;
    const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> sums(blocks), sqs(blocks);
    std::atomic<std::uint64_t> cursor{0};

    auto drain = [&]() {
        while (true) {
            const std::uint64_t b = cursor.fetch_add(1);
            if (b >= blocks) return;
            const std::uint64_t lo = b * kBlock;
            const std::uint64_t hi = std::min(n, lo + kBlock);
            CompensatedSum s, s2;
            for (std::uint64_t i = lo; i < hi; ++i) {
                const double x = sample(static_cast<std::uint32_t>(i));
                s.add(x);
                s2.add(x * x);
            }
            sums[b] = s.value();
            sqs[b] = s2.value();
        }
    };

    if (opt.workers == 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(opt.workers);
        for (std::uint32_t w = 0; w < opt.workers; ++w) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }

    CompensatedSum s, s2;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        s.add(sums[b]);
        s2.add(sqs[b]);
    }
    const double mean = s.value() / static_cast<double>(n);
    double var = 0.0;
    if (n > 1)
        var = std::max(0.0, (s2.value() - static_cast<double>(n) * mean * mean) /
                                static_cast<double>(n - 1));
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

double scheme_terminal(std::uint64_t seed, std::uint32_t m, std::uint32_t i, double lambda,
                       const GridSpec& grid) {
    const double r = 1.0 / (1.0 + lambda * grid.h);
    const double sh = std::sqrt(grid.h);
    double x = 0.0;
    for (std::uint32_t k = 0; k < grid.N; ++k)
        x = (x + sh * normal_at(seed, m, k, i, 0)) * r;
    return x;
}

struct CoupledNoise {
    double sqrt_h;
    double cov_over_sqrt_h;
    double resid_sd;
};

// Cholesky factors of the per-step pair (dW, I) with Var dW = h,
// Var I = (1-e^{-2y})/(2 lambda), Cov = (1-e^{-y})/lambda, y = lambda h.
// The Schur complement is A B h / (2 y^2) with A = 1-e^{-y} and
// B = 2y - (y+2) A = sum_{k>=3} (-1)^k (2-k) y^k / k!, which stays positive.
CoupledNoise make_coupled(double lambda, double h) {
    const double y = lambda * h;
    const double a = -std::expm1(-y);
    double b;
    if (y < 0.5) {
        b = 0.0;
        double yk = y * y * y;
        double fact = 6.0;
        for (int k = 3; k <= 30; ++k) {
            const double term = ((k % 2 == 0) ? 1.0 : -1.0) * (2.0 - k) * yk / fact;
            b += term;
            yk *= y;
            fact *= (k + 1);
            if (std::abs(term) < 1e-20 * std::abs(b)) break;
        }
    } else {
        b = 2.0 * y - (y + 2.0) * a;
    }
    const double resid_var = std::max(0.0, a * b * h / (2.0 * y * y));
    return {std::sqrt(h), a / (lambda * std::sqrt(h)), std::sqrt(resid_var)};
}

struct PairTerminal {
    double scheme;
    double exact;
};

PairTerminal coupled_terminal(std::uint64_t seed, std::uint32_t m, std::uint32_t i,
                              double lambda, const GridSpec& grid) {
    const CoupledNoise cn = make_coupled(lambda, grid.h);
    const double r = 1.0 / (1.0 + lambda * grid.h);
    const double s = std::exp(-lambda * grid.h);
    double xs = 0.0, xe = 0.0;
    for (std::uint32_t k = 0; k < grid.N; ++k) {
        const auto z = normal_pair_at(seed, m, k, i, 0);
        xs = (xs + cn.sqrt_h * z[0]) * r;
        xe = s * xe + cn.cov_over_sqrt_h * z[0] + cn.resid_sd * z[1];
    }
    return {xs, xe};
}

double mode_eigenvalue(std::uint32_t m) { return eigenvalue(ModeIndex(m)); }

} // namespace

McEstimate mc_mode_second_moment(std::uint32_t m, const GridSpec& grid, const McOptions& opt) {
    const double lam = mode_eigenvalue(m);
    return run_blocked(opt, [&, lam](std::uint32_t i) {
        const double x = scheme_terminal(opt.seed, m, i, lam, grid);
        return x * x;
    });
}

McEstimate mc_mode_terminal_mean(std::uint32_t m, const GridSpec& grid, const McOptions& opt) {
    const double lam = mode_eigenvalue(m);
    return run_blocked(
        opt, [&, lam](std::uint32_t i) { return scheme_terminal(opt.seed, m, i, lam, grid); });
}

McEstimate mc_field_norm_sq(SobolevOrder p, std::uint32_t modes, const GridSpec& grid,
                            const McOptions& opt) {
    if (modes == 0)
        throw std::invalid_argument("mc_field_norm_sq: need at least one mode");
    std::vector<double> lams(modes), weights(modes);
    for (std::uint32_t m = 1; m <= modes; ++m) {
        lams[m - 1] = mode_eigenvalue(m);
        weights[m - 1] = sobolev_weight(ModeIndex(m), p);
    }
    return run_blocked(opt, [&](std::uint32_t i) {
        CompensatedSum acc;
        for (std::uint32_t m = 1; m <= modes; ++m) {
            const double x = scheme_terminal(opt.seed, m, i, lams[m - 1], grid);
            acc.add(weights[m - 1] * x * x);
        }
        return acc.value();
    });
}

McEstimate mc_weak_error_mode(std::uint32_t m, const GridSpec& grid, const McOptions& opt) {
    const double lam = mode_eigenvalue(m);
    return run_blocked(opt, [&, lam](std::uint32_t i) {
        const PairTerminal pt = coupled_terminal(opt.seed, m, i, lam, grid);
        return pt.scheme * pt.scheme - pt.exact * pt.exact;
    });
}

McEstimate mc_coupled_strong_error(std::uint32_t m, const GridSpec& grid, const McOptions& opt) {
    const double lam = mode_eigenvalue(m);
    return run_blocked(opt, [&, lam](std::uint32_t i) {
        const PairTerminal pt = coupled_terminal(opt.seed, m, i, lam, grid);
        const double d = pt.scheme - pt.exact;
        return d * d;
    });
}

InterpMomentEstimates mc_interp_moments(std::uint32_t m, std::uint32_t k, double tau,
                                        const GridSpec& grid, const McOptions& opt) {
    const double lam = mode_eigenvalue(m);
    if (k >= grid.N)
        throw std::invalid_argument("mc_interp_moments: step index past the grid");
    if (!(tau >= 0.0) || !(tau <= grid.h))
        throw std::invalid_argument("mc_interp_moments: tau must lie in [0, h]");
    const double f = lam / (1.0 + lam * grid.h);
    const double gamma = 1.0 - tau * f;
    const double st = std::sqrt(tau);

    auto interp_pair = [&, lam](std::uint32_t i) {
        const double r = 1.0 / (1.0 + lam * grid.h);
        const double sh = std::sqrt(grid.h);
        double x = 0.0;
        for (std::uint32_t kk = 0; kk < k; ++kk)
            x = (x + sh * normal_at(opt.seed, m, kk, i, 0)) * r;
        const double w_tau = st * normal_at(opt.seed, m, k, i, 0);
        const double xbar = gamma * (x + w_tau);
        const double b = -f * (x + w_tau);
        return std::pair<double, double>{xbar, b};
    };

    InterpMomentEstimates out;
    out.ex2 = run_blocked(opt, [&](std::uint32_t i) {
        const auto [xbar, b] = interp_pair(i);
        (void)b;
        return xbar * xbar;
    });
    out.ebx = run_blocked(opt, [&](std::uint32_t i) {
        const auto [xbar, b] = interp_pair(i);
        return b * xbar;
    });
    out.eb2 = run_blocked(opt, [&](std::uint32_t i) {
        const auto [xbar, b] = interp_pair(i);
        (void)xbar;
        return b * b;
    });
    return out;
}

} // namespace stoheat
