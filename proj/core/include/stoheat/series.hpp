#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stoheat {

/// Truncation and quadrature controls shared by every spectral-series
/// evaluation in the library.
struct SeriesControl {
    std::uint32_t m_max = 1'000'000; ///< hard cap on the number of modes
    double rel_tol = 1e-10;          ///< stop once tail bound <= rel_tol * |value|
    unsigned quad_order = 16;        ///< Gauss-Legendre order for time integrals
};

/// Throws std::invalid_argument when a control field is out of range.
void validate(const SeriesControl& ctrl);

/// Value of a truncated spectral series together with a certificate that the
/// dropped mass is small: |true value - value| <= tail_bound.
struct SeriesValue {
    double value;
    double tail_bound;
    std::uint32_t modes_used;
};

/// Raised when a series cannot meet the requested relative tolerance within
/// the mode cap. Carries the best value obtained so far and its bound.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double best_value, double tail_bound,
                    std::uint32_t modes_used)
        : std::runtime_error(what),
          best_value_(best_value),
          tail_bound_(tail_bound),
          modes_used_(modes_used) {}

    double best_value() const noexcept { return best_value_; }
    double tail_bound() const noexcept { return tail_bound_; }
    std::uint32_t modes_used() const noexcept { return modes_used_; }

private:
    double best_value_;
    double tail_bound_;
    std::uint32_t modes_used_;
};

/// Neumaier-compensated accumulator. Keeps long ascending-mode sums exact to
/// the last bit for a fixed summation order, which is what makes results
/// independent of how work is scheduled.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct TailEstimate {
    double value;       ///< estimate of the dropped tail
    double error_bound; ///< bound on the estimate's own error
};

/// Euler-Maclaurin evaluation of sum_{m > M} m^{-2q} / (m^2 + a) for q >= 0,
/// a >= 0. The integral term is expanded geometrically in a/x^2, so the
/// routine requires (M+1)^2 >= 4a and throws std::domain_error otherwise.
///
/// This is how slowly converging O(m^{-2q-2}) mode tails are restored to
/// near machine precision with only O(sqrt(a)) explicit terms.
TailEstimate rational_series_tail(double q, double a, std::uint32_t M);

namespace detail {

/// exp(-y) flushed to exactly zero once the result would be subnormal;
/// y is expected nonnegative.
inline double exp_neg(double y) noexcept {
    return y > 700.0 ? 0.0 : std::exp(-y);
}

} // namespace detail

} // namespace stoheat
