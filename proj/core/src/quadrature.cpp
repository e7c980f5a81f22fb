#include "stoheat/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace stoheat {

GaussLegendre::GaussLegendre(std::uint32_t order) {
    if (order < 1 || order > 512)
        throw std::invalid_argument("GaussLegendre: order must lie in [1, 512]");
    const std::uint32_t n = order;
    x_.assign(n, 0.0);
    w_.assign(n, 0.0);

    const std::uint32_t half = (n + 1) / 2;
    for (std::uint32_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (std::uint32_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                // one polishing step once converged
                p1 = 1.0;
                p2 = 0.0;
                for (std::uint32_t j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                z -= p1 / pp;
                break;
            }
        }
        x_[i] = -z;
        x_[n - 1 - i] = z;
        w_[i] = w_[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    if (n % 2 == 1) x_[n / 2] = 0.0;
}

} // namespace stoheat
