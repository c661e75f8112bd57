#include "ara/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ara {

namespace {

constexpr double kProbTolerance = 1e-9;

bool finite(double x) { return std::isfinite(x); }

}  // namespace

InverseGammaParams::InverseGammaParams(double shape, double scale) : shape_(shape), scale_(scale) {
    if (!(shape > 0.0) || !finite(shape)) throw InvariantError("inverse gamma shape must be > 0");
    if (!(scale > 0.0) || !finite(scale)) throw InvariantError("inverse gamma scale must be > 0");
}

PowerPricePrior::PowerPricePrior(double lower, double upper, double exponent)
    : lower_(lower), upper_(upper), exponent_(exponent) {
    if (!finite(lower) || !finite(upper) || !(lower < upper)) {
        throw InvariantError("power prior requires lower < upper");
    }
    if (!(exponent >= 0.0) || !finite(exponent)) {
        throw InvariantError("power prior exponent must be >= 0");
    }
}

double PowerPricePrior::pdf(double p) const noexcept {
    if (p < lower_ || p > upper_) return 0.0;
    const double width = upper_ - lower_;
    return (exponent_ + 1.0) * std::pow((p - lower_) / width, exponent_) / width;
}

double PowerPricePrior::cdf(double p) const noexcept {
    if (p <= lower_) return 0.0;
    if (p >= upper_) return 1.0;
    return std::pow((p - lower_) / (upper_ - lower_), exponent_ + 1.0);
}

double PowerPricePrior::quantile(double u) const noexcept {
    return lower_ + (upper_ - lower_) * std::pow(u, 1.0 / (exponent_ + 1.0));
}

CategoricalPMF::CategoricalPMF(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
    if (values_.empty()) throw InvariantError("categorical pmf needs at least one value");
    if (values_.size() != probs_.size()) {
        throw InvariantError("categorical pmf: values and probs differ in length");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!finite(values_[i])) throw InvariantError("categorical pmf: non-finite value");
        if (i > 0 && !(values_[i] > values_[i - 1])) {
            throw InvariantError("categorical pmf: values must be strictly ascending");
        }
        if (!(probs_[i] >= 0.0) || !finite(probs_[i])) {
            throw InvariantError("categorical pmf: probabilities must be >= 0");
        }
    }
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > kProbTolerance) {
        throw InvariantError("categorical pmf: probabilities sum to " + std::to_string(total) +
                             ", expected 1");
    }
    cumulative_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
}

double CategoricalPMF::cdf(double x) const noexcept {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return 0.0;
    return std::min(1.0, cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1]);
}

double CategoricalPMF::prob_below(double x) const noexcept {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return 0.0;
    return std::min(1.0, cumulative_[static_cast<std::size_t>(it - values_.begin()) - 1]);
}

double CategoricalPMF::quantile(double u) const noexcept {
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t idx = it == cumulative_.end() ? cumulative_.size() - 1
                                              : static_cast<std::size_t>(it - cumulative_.begin());
    // Rounding in the running sum must never land on a zero-probability tail atom.
    while (idx > 0 && probs_[idx] == 0.0) --idx;
    return values_[idx];
}

double CategoricalPMF::mean() const noexcept {
    return std::inner_product(values_.begin(), values_.end(), probs_.begin(), 0.0);
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty()) throw InvariantError("empirical distribution needs at least one sample");
    for (double s : samples_) {
        if (!finite(s)) throw InvariantError("empirical distribution: non-finite sample");
    }
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const noexcept {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::quantile(double u) const noexcept {
    const auto n = samples_.size();
    auto idx = static_cast<std::size_t>(std::ceil(u * static_cast<double>(n)));
    idx = std::clamp<std::size_t>(idx, 1, n);
    return samples_[idx - 1];
}

UniformInterval::UniformInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!finite(lo) || !finite(hi) || !(lo <= hi)) {
        throw InvariantError("uniform interval requires lo <= hi");
    }
}

double quantile(const ScalarDistribution& dist, double u) {
    return std::visit(
        [u](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return d.value;
            } else {
                return d.quantile(u);
            }
        },
        dist);
}

bool is_degenerate(const ScalarDistribution& dist) noexcept {
    if (std::holds_alternative<PointMass>(dist)) return true;
    if (const auto* u = std::get_if<UniformInterval>(&dist)) return u->lo() == u->hi();
    return false;
}

double sample(const ScalarDistribution& dist, RngStream& rng) {
    if (const auto* pm = std::get_if<PointMass>(&dist)) return pm->value;
    return quantile(dist, rng.uniform());
}

std::pair<double, double> support(const ScalarDistribution& dist) noexcept {
    return std::visit(
        [](const auto& d) -> std::pair<double, double> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PointMass>) {
                return {d.value, d.value};
            } else if constexpr (std::is_same_v<T, UniformInterval>) {
                return {d.lo(), d.hi()};
            } else if constexpr (std::is_same_v<T, PowerPricePrior>) {
                return {d.lower(), d.upper()};
            } else if constexpr (std::is_same_v<T, CategoricalPMF>) {
                return {d.values().front(), d.values().back()};
            } else {
                return {d.samples().front(), d.samples().back()};
            }
        },
        dist);
}

// Marsaglia-Tsang squeeze/rejection; shapes below one are boosted by U^(1/shape).
double sample_gamma(double shape, RngStream& rng) {
    if (!(shape > 0.0)) throw std::domain_error("gamma shape must be > 0");
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform(), 1.0 / shape);
        return sample_gamma(shape + 1.0, rng) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_inverse_gamma(const InverseGammaParams& params, RngStream& rng) {
    return params.scale() / sample_gamma(params.shape(), rng);
}

double sample_power_prior(const PowerPricePrior& prior, RngStream& rng) {
    return prior.quantile(rng.uniform());
}

double sample_categorical(const CategoricalPMF& pmf, RngStream& rng) {
    return pmf.quantile(rng.uniform());
}

EmpiricalDistribution ecdf(std::vector<double> samples) {
    return EmpiricalDistribution(std::move(samples));
}

double ecdf_eval(const EmpiricalDistribution& dist, double x) noexcept { return dist.cdf(x); }

}  // namespace ara
