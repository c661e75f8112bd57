#include "ara/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ara {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-15;
constexpr int kMaxIterations = 2000;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double incomplete_beta_with_log_beta(double a, double b, double x, double one_minus_x,
                                     double log_beta) {
    if (x <= 0.0) return 0.0;
    if (one_minus_x <= 0.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log(one_minus_x) - log_beta;
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, one_minus_x) / b;
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x, double one_minus_x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("incomplete beta: parameters must be positive");
    }
    if (x < 0.0 || one_minus_x < 0.0) {
        throw std::domain_error("incomplete beta: x outside [0, 1]");
    }
    return incomplete_beta_with_log_beta(a, b, x, one_minus_x, log_beta(a, b));
}

double regularized_incomplete_beta(double a, double b, double x) {
    return regularized_incomplete_beta(a, b, x, 1.0 - x);
}

double normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

StudentT::StudentT(double dof) : dof_(dof) {
    if (!(dof > 0.0) || !std::isfinite(dof)) {
        throw std::domain_error("student t: degrees of freedom must be positive and finite");
    }
    log_beta_ = log_beta(0.5 * dof, 0.5);
}

double StudentT::cdf(double x) const {
    if (std::isnan(x)) return x;
    if (x == 0.0) return 0.5;
    if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
    const double t2 = x * x;
    const double denom = dof_ + t2;
    // Pr(|T| > |x|) = I_{dof/(dof+x^2)}(dof/2, 1/2)
    const double tail2 =
        incomplete_beta_with_log_beta(0.5 * dof_, 0.5, dof_ / denom, t2 / denom, log_beta_);
    return x > 0.0 ? 1.0 - 0.5 * tail2 : 0.5 * tail2;
}

double StudentT::pdf(double x) const {
    return std::exp(-0.5 * (dof_ + 1.0) * std::log1p(x * x / dof_) - log_beta_) /
           std::sqrt(dof_);
}

double student_t_cdf(double x, double dof) { return StudentT(dof).cdf(x); }

}  // namespace ara
