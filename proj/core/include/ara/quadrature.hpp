#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ara {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// Composite Gauss-Legendre: `panels` equal panels of `order` points each.
QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order, double a, double b);

/// Trapezoidal rule with `n` equally spaced nodes (endpoints included).
QuadratureRule trapezoid(std::size_t n, double a, double b);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

}  // namespace ara
