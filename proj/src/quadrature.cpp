#include "magbil/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magbil {

// Nodes by Newton iteration on P_n, seeded with the Chebyshev-like estimate.
// Weights from the derivative identity w = 2 / ((1-x^2) P_n'(x)^2).
GaussLegendre::GaussLegendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
    nodes.resize(n);
    weights.resize(n);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // three-term recurrence for P_n(x) and P_{n-1}(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // store symmetric pair, mapped to [a, b]
        const double mid = 0.5 * (a + b), len = 0.5 * (b - a);
        nodes[i] = mid - len * x;
        nodes[n - 1 - i] = mid + len * x;
        weights[i] = weights[n - 1 - i] = w * len;
    }
}

double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 8) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t mid = terms.size() / 2;
    return pairwise_sum(terms.first(mid)) + pairwise_sum(terms.subspan(mid));
}

} // namespace magbil
