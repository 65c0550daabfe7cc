#pragma once

#include <vector>

namespace pricer {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Cached Gauss-Legendre rule of order n (Newton iteration on Legendre roots).
const GaussLegendreRule& gauss_legendre(int n);

// Composite Gauss-Legendre integral of f over [a, b] split into `panels`
// equal panels, `order` points each. Breakpoint-aware callers should split
// [a, b] themselves.
template <typename F>
double composite_gl(const F& f, double a, double b, int panels, int order) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    double sum = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        sum += 0.5 * h * s;
    }
    return sum;
}

}  // namespace pricer
