#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ara/rng.hpp"

namespace ara {

/// Raised when a domain object is constructed in violation of its invariants.
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inverse-gamma Γ⁻¹(shape, scale): density ∝ x^(-shape-1) exp(-scale/x).
class InverseGammaParams {
public:
    InverseGammaParams(double shape, double scale);

    double shape() const noexcept { return shape_; }
    double scale() const noexcept { return scale_; }

    friend bool operator==(const InverseGammaParams&, const InverseGammaParams&) = default;

private:
    double shape_;
    double scale_;
};

/// Price prior on [lower, upper] with density (n+1)(p-lower)^n / (upper-lower)^(n+1).
class PowerPricePrior {
public:
    PowerPricePrior(double lower, double upper, double exponent);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double exponent() const noexcept { return exponent_; }

    double pdf(double p) const noexcept;
    double cdf(double p) const noexcept;
    double quantile(double u) const noexcept;

    friend bool operator==(const PowerPricePrior&, const PowerPricePrior&) = default;

private:
    double lower_;
    double upper_;
    double exponent_;
};

/// Finite distribution over strictly ascending values.
class CategoricalPMF {
public:
    CategoricalPMF(std::vector<double> values, std::vector<double> probs);

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Pr(X <= x)
    double cdf(double x) const noexcept;
    /// Pr(X < x)
    double prob_below(double x) const noexcept;
    double quantile(double u) const noexcept;
    double mean() const noexcept;

    friend bool operator==(const CategoricalPMF&, const CategoricalPMF&) = default;

private:
    std::vector<double> values_;
    std::vector<double> probs_;
    std::vector<double> cumulative_;
};

/// Step CDF of a sample; right-continuous, 0 below the minimum, 1 at the maximum.
class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    const std::vector<double>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

    double cdf(double x) const noexcept;
    double quantile(double u) const noexcept;

    friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

private:
    std::vector<double> samples_;
};

struct PointMass {
    double value = 0.0;
    friend bool operator==(const PointMass&, const PointMass&) = default;
};

class UniformInterval {
public:
    UniformInterval(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double quantile(double u) const noexcept { return lo_ + (hi_ - lo_) * u; }

    friend bool operator==(const UniformInterval&, const UniformInterval&) = default;

private:
    double lo_;
    double hi_;
};

/// Any one-dimensional law used for prices or utility parameters.
using ScalarDistribution =
    std::variant<PointMass, UniformInterval, PowerPricePrior, CategoricalPMF, EmpiricalDistribution>;

double quantile(const ScalarDistribution& dist, double u);
double sample(const ScalarDistribution& dist, RngStream& rng);
/// Whether the law is a single atom (sampling consumes no randomness).
bool is_degenerate(const ScalarDistribution& dist) noexcept;
/// Closed interval containing the support.
std::pair<double, double> support(const ScalarDistribution& dist) noexcept;

double sample_gamma(double shape, RngStream& rng);
double sample_inverse_gamma(const InverseGammaParams& params, RngStream& rng);
double sample_power_prior(const PowerPricePrior& prior, RngStream& rng);
double sample_categorical(const CategoricalPMF& pmf, RngStream& rng);

EmpiricalDistribution ecdf(std::vector<double> samples);
double ecdf_eval(const EmpiricalDistribution& dist, double x) noexcept;

}  // namespace ara
