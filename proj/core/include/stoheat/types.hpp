#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stoheat {

/// Regularity index p of the negative Sobolev scale H^{-p}.
///
/// The h^{p+1/2} weak rate only holds for p in [0, 1/2); construction
/// enforces that hypothesis so it cannot be violated downstream.
class SobolevOrder {
public:
    explicit SobolevOrder(double p) : p_(p) {
        if (!(p >= 0.0 && p < 0.5))
            throw std::domain_error(
                "SobolevOrder: p = " + std::to_string(p) +
                " outside [0, 1/2); the h^{p+1/2} weak rate requires 0 <= p < 1/2");
    }
    double value() const noexcept { return p_; }

private:
    double p_;
};

/// One-based index into the Dirichlet eigenbasis on (0, 1).
class ModeIndex {
public:
    explicit ModeIndex(std::uint32_t m) : m_(m) {
        if (m == 0)
            throw std::domain_error("ModeIndex: modes are numbered from 1");
    }
    std::uint32_t value() const noexcept { return m_; }

private:
    std::uint32_t m_;
};

/// Uniform time grid t_k = k h on [0, T] with h = T/N.
struct GridSpec {
    GridSpec(double T_, std::uint32_t N_) : T(T_), N(N_), h(T_ / N_) {
        if (!(T_ > 0.0) || !(T_ < 1e12))
            throw std::domain_error("GridSpec: T must be positive and finite");
        if (N_ == 0)
            throw std::domain_error("GridSpec: N must be at least 1");
    }

    double T;
    std::uint32_t N;
    double h;

    double t(std::uint64_t k) const noexcept { return h * static_cast<double>(k); }

    /// T - t_k evaluated as (N - k) h, which stays exact near the endpoint.
    double time_to_end(std::uint64_t k) const noexcept {
        return h * static_cast<double>(N - k);
    }
};

} // namespace stoheat
