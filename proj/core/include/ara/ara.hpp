#pragma once

// Generic n-producer adversarial pricing template: random utilities for the
// customer and competitors, the customer's multiple-comparison choice, the
// competitors' random optimal prices and the supported producer's grid search.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ara/distributions.hpp"
#include "ara/evaluation.hpp"
#include "ara/grid.hpp"
#include "ara/rng.hpp"

namespace ara {

enum class UtilityFamily { RiskNeutral, Cara, PerishableRetail, Tabulated };

/// Monetary result for an agent when its product is the one chosen, as a
/// function of the product's price and the outcome feature s.
using PayoffFn = std::function<double(double price, double outcome)>;

namespace payoff {
PayoffFn price();              // seller revenue p
PayoffFn value_minus_price();  // buyer surplus s - p
PayoffFn value();              // s
}  // namespace payoff

/// Whether a realisation draws one utility parameter for all products or one per product.
enum class ParameterSharing { Shared, PerProduct };

/// A parametric utility family plus a prior over its parameter θ.
///
///   RiskNeutral       chosen: payoff - θ         otherwise: 0
///   PerishableRetail  chosen: payoff - θ         otherwise: -θ
///   Cara              chosen: 1 - exp(-θ·payoff) otherwise: 0
///   Tabulated         chosen: θ·table(payoff)    otherwise: 0
///
/// For producers θ is typically the unit cost (RiskNeutral / Perishable) and
/// `chosen` means the customer bought the producer's own product. Customers
/// evaluate every product with chosen = true.
struct RandomUtilitySpec {
    UtilityFamily family = UtilityFamily::RiskNeutral;
    ScalarDistribution parameter = PointMass{0.0};
    PayoffFn payoff = payoff::price();
    std::vector<std::pair<double, double>> table;  // (payoff, utility) knots, ascending payoff
    std::optional<double> declared_bound;
    ParameterSharing sharing = ParameterSharing::Shared;

    double utility(double price, bool chosen, double outcome, double theta) const;
};

struct DiscreteOutcome {
    std::vector<double> values;
    std::vector<double> probs;
};

struct ContinuousOutcome {
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> density;
};

using OutcomeLaw = std::variant<DiscreteOutcome, ContinuousOutcome>;

/// Distribution of the outcome feature s given the chosen product.
/// A single law is shared by every product.
class OutcomeModel {
public:
    static constexpr std::size_t kQuadratureNodes = 1024;

    explicit OutcomeModel(std::vector<OutcomeLaw> per_choice);
    /// No outcome node: s is identically 0.
    static OutcomeModel none();

    const OutcomeLaw& law(std::size_t choice) const;
    std::size_t size() const noexcept { return per_choice_.size(); }

    /// Normalisation failure, if any.
    std::optional<std::string> defect() const;

    /// E[f(s) | c = choice]: exact enumeration for discrete laws,
    /// fixed-node trapezoid for continuous ones.
    double expectation(std::size_t choice, const std::function<double(double)>& f) const;
    double sample(std::size_t choice, RngStream& rng) const;

private:
    std::vector<OutcomeLaw> per_choice_;
};

/// The customer's pick for one realisation of (utility, beliefs).
struct ChoiceOutcome {
    std::size_t chosen = 0;
    std::vector<double> expected_utilities;
};

/// Product 0 (the supported producer) wins only if its expected utility strictly
/// exceeds every alternative; otherwise the best alternative (lowest index on ties).
ChoiceOutcome resolve_choice(std::vector<double> expected_utilities);
std::size_t resolve_choice_index(std::span<const double> expected_utilities);

/// Monte Carlo choice frequencies over products 0..n-1; components sum to 1.
std::vector<double> customer_choice_probs(std::span<const double> prices,
                                          const RandomUtilitySpec& spec,
                                          const OutcomeModel& outcomes, std::size_t n_draws,
                                          RngStream& rng);

/// Maps a full price vector to choice probabilities. Stochastic models draw from `rng`.
using ChoiceModel =
    std::function<std::vector<double>(std::span<const double> prices, RngStream& rng)>;

/// Choice model backed by customer_choice_probs.
ChoiceModel make_customer_choice_model(RandomUtilitySpec spec, OutcomeModel outcomes,
                                       std::size_t n_draws);

/// An agent's beliefs about the other producers' prices, in product order.
struct AgentBeliefs {
    std::vector<ScalarDistribution> others;
    /// Independent marginals; when false all marginals share one uniform (comonotone).
    bool independent = true;

    std::vector<double> sample(RngStream& rng) const;
};

struct CompetitorPriceDraw {
    double price = 0.0;
    /// Every grid point had the same realised expected utility.
    bool degenerate = false;
};

/// One draw of competitor `target`'s random optimal price: realise (U_i, Q_i),
/// evaluate the realised expected utility at each grid point, return the argmax.
CompetitorPriceDraw sample_competitor_optimal_price(std::size_t target,
                                                    const RandomUtilitySpec& spec,
                                                    const AgentBeliefs& beliefs,
                                                    const ChoiceModel& choice_model,
                                                    const PriceGrid& grid,
                                                    std::size_t inner_draws, RngStream& rng,
                                                    const OutcomeModel& outcomes =
                                                        OutcomeModel::none());

/// Supported producer's Monte Carlo expected utility over the grid, using
/// explicit joint samples of the competitor prices (one vector per draw).
EvaluationCurve solve_supported_price(const PriceGrid& grid, const RandomUtilitySpec& u1,
                                      std::span<const std::vector<double>> competitor_samples,
                                      const ChoiceModel& choice_model,
                                      const OutcomeModel& outcomes, RngStream& rng,
                                      unsigned workers = 1);

/// As above, drawing `n_draws` joint competitor-price samples from `beliefs` first.
EvaluationCurve solve_supported_price(const PriceGrid& grid, const RandomUtilitySpec& u1,
                                      const AgentBeliefs& beliefs,
                                      const ChoiceModel& choice_model,
                                      const OutcomeModel& outcomes, std::size_t n_draws,
                                      RngStream& rng, unsigned workers = 1);

class ValidationConfig {
public:
    ValidationConfig(double utility_bound, std::size_t probe_count);

    double utility_bound() const noexcept { return utility_bound_; }
    std::size_t probe_count() const noexcept { return probe_count_; }

private:
    double utility_bound_;
    std::size_t probe_count_;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const noexcept;
    const ValidationCheck* find(std::string_view name) const noexcept;
};

/// Existence preconditions for an optimal price: compact nonempty grid, utility
/// bounded by ξ (and by any declared bound) at sampled probes, normalised outcomes.
ValidationReport validate_problem(const PriceGrid& grid, const RandomUtilitySpec& spec,
                                  const OutcomeModel& outcomes, const ValidationConfig& cfg,
                                  RngStream rng = RngStream(0x5EEDull, 0));

}  // namespace ara
