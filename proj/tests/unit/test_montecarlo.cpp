#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "stoheat/montecarlo.hpp"
#include "stoheat/scheme.hpp"
#include "stoheat/spectral.hpp"
#include "stoheat/weak_error.hpp"

using namespace stoheat;

namespace {

double z_score(const McEstimate& est, double reference) {
    return (est.mean - reference) / est.std_error;
}

} // namespace

TEST_CASE("estimates are bit-identical for any worker count") {
    const GridSpec grid(1.0, 16);
    McOptions opt;
    opt.samples = 4097;  // exercises a ragged final block
    opt.seed = 777;

    opt.workers = 1;
    const McEstimate one = mc_mode_second_moment(1, grid, opt);
    opt.workers = 3;
    const McEstimate three = mc_mode_second_moment(1, grid, opt);
    opt.workers = 8;
    const McEstimate eight = mc_mode_second_moment(1, grid, opt);

    CHECK(one.mean == three.mean);
    CHECK(one.std_error == three.std_error);
    CHECK(one.mean == eight.mean);
    CHECK(one.std_error == eight.std_error);
    CHECK(one.n == 4097);
}

TEST_CASE("standard error scales like the square root of the sample count") {
    const GridSpec grid(1.0, 8);
    McOptions opt;
    opt.seed = 31415;
    opt.samples = 1000;
    const double se3 = mc_mode_second_moment(1, grid, opt).std_error;
    opt.samples = 100000;
    const double se5 = mc_mode_second_moment(1, grid, opt).std_error;
    const double ratio = se3 / se5;  // ideal: sqrt(100) = 10
    CHECK(ratio > 8.0);
    CHECK(ratio < 12.0);
}

TEST_CASE("single-mode field norm collapses to the mode second moment") {
    // at p = 0 the weight of mode one is exactly 1, so the two estimators
    // consume the same noise addresses and must agree bit for bit
    const GridSpec grid(1.0, 8);
    McOptions opt;
    opt.samples = 3000;
    opt.seed = 555;
    const McEstimate field = mc_field_norm_sq(SobolevOrder(0.0), 1, grid, opt);
    const McEstimate mode = mc_mode_second_moment(1, grid, opt);
    CHECK(field.mean == mode.mean);
    CHECK(field.std_error == mode.std_error);

    CHECK_THROWS_AS(mc_field_norm_sq(SobolevOrder(0.0), 0, grid, opt), std::invalid_argument);
}

TEST_CASE("sampled second moment matches the closed form") {
    const GridSpec grid(1.0, 16);
    McOptions opt;
    opt.samples = 20000;
    opt.seed = 42;
    const McEstimate est = mc_mode_second_moment(1, grid, opt);
    CHECK(std::abs(z_score(est, scheme_variance(kModeRate, grid, grid.N))) < 4.0);

    const McEstimate mean_est = mc_mode_terminal_mean(1, grid, opt);
    CHECK(std::abs(mean_est.mean) < 4.0 * mean_est.std_error);
}

TEST_CASE("sampled field norm matches the truncated exact sum") {
    const GridSpec grid(1.0, 8);
    const SobolevOrder p(0.0);
    const std::uint32_t modes = 8;
    McOptions opt;
    opt.samples = 20000;
    opt.seed = 90210;
    double ref = 0.0;
    for (std::uint32_t m = 1; m <= modes; ++m)
        ref += sobolev_weight(ModeIndex(m), p) *
               scheme_variance(eigenvalue(ModeIndex(m)), grid, grid.N);
    const McEstimate est = mc_field_norm_sq(p, modes, grid, opt);
    CHECK(std::abs(z_score(est, ref)) < 4.0);
}

TEST_CASE("coupled estimators match their closed forms") {
    const GridSpec grid(1.0, 16);
    McOptions opt;
    opt.samples = 20000;
    opt.seed = 1618;

    const McEstimate strong = mc_coupled_strong_error(1, grid, opt);
    CHECK(std::abs(z_score(strong, coupled_second_moment_error(kModeRate, grid))) < 4.0);
    CHECK(strong.mean > 0.0);

    // the coupling keeps the weak-error estimator's variance far below the
    // size of the individual second moments
    const McEstimate weak = mc_weak_error_mode(1, grid, opt);
    CHECK(std::abs(z_score(weak, per_mode_weak_error(kModeRate, grid))) < 4.0);
    CHECK(weak.std_error < 0.05 * scheme_variance(kModeRate, grid, grid.N));
}

TEST_CASE("sampled interpolant moments match the closed forms") {
    const GridSpec grid(1.0, 16);
    const std::uint32_t m = 2, k = 5;
    const double tau = grid.h / 3.0;
    McOptions opt;
    opt.samples = 20000;
    opt.seed = 2718;

    const double lambda = eigenvalue(ModeIndex(m));
    const double v = scheme_variance(lambda, grid, k);
    const InterpMoments ref = interp_moments(lambda, grid.h, v, tau);
    const InterpMomentEstimates est = mc_interp_moments(m, k, tau, grid, opt);
    CHECK(std::abs(z_score(est.ex2, ref.ex2)) < 4.0);
    CHECK(std::abs(z_score(est.ebx, ref.ebx)) < 4.0);
    CHECK(std::abs(z_score(est.eb2, ref.eb2)) < 4.0);

    CHECK_THROWS_AS(mc_interp_moments(m, grid.N, tau, grid, opt), std::invalid_argument);
    CHECK_THROWS_AS(mc_interp_moments(m, k, -0.5, grid, opt), std::invalid_argument);
    CHECK_THROWS_AS(mc_interp_moments(m, k, 2.0 * grid.h, grid, opt), std::invalid_argument);
}

TEST_CASE("option validation rejects out-of-range sampling plans") {
    const GridSpec grid(1.0, 4);
    McOptions opt;
    opt.samples = 0;
    CHECK_THROWS_AS(mc_mode_second_moment(1, grid, opt), std::invalid_argument);
    opt.samples = 100;
    opt.workers = 0;
    CHECK_THROWS_AS(mc_mode_second_moment(1, grid, opt), std::invalid_argument);
    opt.workers = 500;
    CHECK_THROWS_AS(mc_mode_second_moment(1, grid, opt), std::invalid_argument);
}
