#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stoheat {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on the
// Legendre recurrence.
class GaussLegendre {
public:
    explicit GaussLegendre(std::uint32_t order);

    std::uint32_t order() const { return static_cast<std::uint32_t>(x_.size()); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < x_.size(); ++i)
            acc += w_[i] * f(mid + half * x_[i]);
        return acc * half;
    }

private:
    std::vector<double> x_, w_;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double base_value, double refined_value)
        : std::runtime_error(what), base_value(base_value), refined_value(refined_value) {}

    double base_value;
    double refined_value;
};

// Integrate at the base order, re-integrate at the refined order, and require
// agreement within tol; the base-order value is the result.
template <class F>
double integrate_checked(F&& f, double a, double b, const GaussLegendre& base,
                         const GaussLegendre& refined, double tol) {
    const double v0 = base.integrate(f, a, b);
    const double v1 = refined.integrate(f, a, b);
    if (!(std::abs(v0 - v1) <= tol))
        throw QuadratureError("integrate_checked: order-doubling discrepancy " +
                                  std::to_string(std::abs(v0 - v1)) + " exceeds tolerance " +
                                  std::to_string(tol),
                              v0, v1);
    return v0;
}

} // namespace stoheat
