#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace magbil {

/// Gauss-Legendre rule on [a, b].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    GaussLegendre(int n, double a, double b);

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0, comp = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            // Kahan compensation; node order is fixed, so results are
            // reproducible bit for bit.
            double term = weights[i] * f(nodes[i]) - comp;
            double next = acc + term;
            comp = (next - acc) - term;
            acc = next;
        }
        return acc;
    }
};

/// Deterministic pairwise sum (recursive splitting, fixed order).
double pairwise_sum(std::span<const double> terms);

} // namespace magbil
