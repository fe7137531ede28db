#include "fishbone/quadrature.hpp"

#include <numbers>

namespace fishbone {

const GaussRule& gauss_legendre_16() {
    static const GaussRule rule = [] {
        GaussRule g{};
        constexpr int n = GaussRule::order;
        for (int i = 0; i < n; ++i) {
            // Newton iteration on P_n from the Chebyshev-like initial guess.
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            g.nodes[i] = x;
            g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return rule;
}

}  // namespace fishbone
