#include "ara/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ara {

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const auto jd = static_cast<double>(j);
                p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
            }
            dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = mid - half * z;
        rule.nodes[n - 1 - i] = mid + half * z;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order, double a, double b) {
    if (panels == 0) throw std::invalid_argument("composite_gauss_legendre: panels must be >= 1");
    QuadratureRule rule;
    rule.nodes.reserve(panels * order);
    rule.weights.reserve(panels * order);
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const auto panel = gauss_legendre(order, lo, p + 1 == panels ? b : lo + width);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return rule;
}

QuadratureRule trapezoid(std::size_t n, double a, double b) {
    if (n < 2) throw std::invalid_argument("trapezoid: need at least two nodes");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = i + 1 == n ? b : a + h * static_cast<double>(i);
        rule.weights[i] = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    }
    return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

}  // namespace ara
