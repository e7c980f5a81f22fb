#include "stoheat/spectral.hpp"

#include <cmath>
#include <numbers>

namespace stoheat {

double eigenvalue(ModeIndex m) {
    const double k = std::numbers::pi * static_cast<double>(m.value());
    return 0.5 * k * k;
}

double eigenfunction(ModeIndex m, double x) {
    return std::numbers::sqrt2 * std::sin(static_cast<double>(m.value()) * std::numbers::pi * x);
}

double sobolev_weight(ModeIndex m, SobolevOrder p) {
    return std::pow(eigenvalue(m), -p.value());
}

double hneg_norm_sq(const double* coeffs, std::uint32_t n, SobolevOrder p) {
    CompensatedSum acc;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double c = coeffs[i];
        acc.add(sobolev_weight(ModeIndex(i + 1), p) * c * c);
    }
    return acc.value();
}

SeriesValue exact_field_second_moment(SobolevOrder p, double T, const SeriesControl& ctrl) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("exact_field_second_moment: T must be positive and finite");
    validate(ctrl);

    CompensatedSum acc;
    std::uint32_t m = 0;
    while (true) {
        ++m;
        const double lam = eigenvalue(ModeIndex(m));
        const double term =
            std::pow(lam, -p.value()) * (-std::expm1(-2.0 * lam * T)) / (2.0 * lam);
        acc.add(term);

        // tail envelope: sum_{j>m} lambda_j^{-p-1}/2 <= (1/2) c^{-p-1} m^{-2p-1}/(2p+1)
        const double q = p.value();
        const double env = 0.5 * std::pow(kModeRate, -q - 1.0) *
                           std::pow(static_cast<double>(m), -2.0 * q - 1.0) / (2.0 * q + 1.0);
        if (env <= ctrl.rel_tol * std::abs(acc.value()))
            return {acc.value(), env, m};
        if (m >= ctrl.m_max)
            throw TruncationError("exact_field_second_moment: tail envelope still above "
                                  "rel_tol at m_max modes",
                                  acc.value(), env, m);
    }
}

} // namespace stoheat
