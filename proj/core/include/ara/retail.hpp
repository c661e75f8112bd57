#pragma once

// Two-retailer pricing: a probit customer, a t-marginal acceptance curve,
// the competitor's random optimal price and the supported retailer's grid search.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ara/ara.hpp"
#include "ara/distributions.hpp"
#include "ara/evaluation.hpp"
#include "ara/grid.hpp"
#include "ara/rng.hpp"

namespace ara::retail {

enum class UtilityVariant { NonPerishable, Perishable };

struct RetailScenario {
    double v1 = 5.0;
    double v2 = 5.0;
    double p1_hat = 50.0;
    double p2_hat = 40.0;
    InverseGammaParams alpha{2.0, 2.0};
    InverseGammaParams beta{0.5, 0.5};
    double prior_exponent = 2.0;
    double grid_step = 0.5;
    std::size_t n1 = 100;
    std::size_t n2 = 100;
    /// Known customer noise scale; when set the probit model is used directly.
    std::optional<double> fixed_sigma;
    /// Known competitor price; replaces the competitor sampler by one sample.
    std::optional<double> known_p2;
    UtilityVariant utility = UtilityVariant::NonPerishable;

    /// Every violated invariant, empty when valid.
    std::vector<std::string> violations() const;
    void validate() const;

    PriceGrid p1_grid() const { return PriceGrid(v1, p1_hat, grid_step); }
    PriceGrid p2_grid() const { return PriceGrid(v2, p2_hat, grid_step); }
    PowerPricePrior p1_prior() const { return PowerPricePrior(v1, p1_hat, prior_exponent); }

    friend bool operator==(const RetailScenario&, const RetailScenario&) = default;
};

/// 1 - Phi((p1 - p2) / sigma).
double probit_choice_prob(double p1, double p2, double sigma);

/// 1 - T_{2a1}(sqrt(a1/a2) (p1 - p2)), the probit marginalised over sigma^2 ~ IG(a1, a2).
double t_choice_prob(double p1, double p2, const InverseGammaParams& alpha);

/// Probability that the customer buys from retailer 1, under the scenario's customer model.
double customer_accept_prob(double p1, double p2, const RetailScenario& scenario);

/// Competitor's expected profit at p2 against a fixed sample of retailer-1 prices.
double competitor_profit(double p2, std::span<const double> p1_samples,
                         const RetailScenario& scenario);

/// N1 draws of the competitor's random optimal price. Replicate r uses rng.derive(r).
std::vector<double> sample_p2(const RetailScenario& scenario, const RngStream& rng,
                              unsigned workers = 1);

struct Psi1Estimate {
    double value = 0.0;
    double std_err = 0.0;
    double accept_prob = 0.0;
    double accept_std_err = 0.0;
};

Psi1Estimate estimate_psi1(double p1, std::span<const double> p2_samples,
                           const RetailScenario& scenario);

struct RetailResult {
    EvaluationCurve curve;
    std::vector<double> p2_samples;
};

/// Samples competitor prices once (or uses the known price), then scans the p1 grid.
RetailResult optimal_price_p1(const RetailScenario& scenario, const RngStream& rng,
                              unsigned workers = 1);

/// Curve over the p1 grid for a given competitor-price sample.
EvaluationCurve evaluate_p1_grid(const RetailScenario& scenario,
                                 std::span<const double> p2_samples, unsigned workers = 1);

/// Binary choice model (retailer 1, retailer 2) for the generic template.
ChoiceModel make_choice_model(const RetailScenario& scenario);

}  // namespace ara::retail
