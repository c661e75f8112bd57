#pragma once

// Pension-plan offer pricing: CARA customers with early-exit risk choose among
// guaranteed rates; the bank picks the rate maximising margin times acceptance.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ara/distributions.hpp"
#include "ara/grid.hpp"
#include "ara/rng.hpp"

namespace ara::pension {

enum class ScoreClass { None, Low, High };

std::string to_string(ScoreClass c);
std::optional<ScoreClass> score_class_from_string(std::string_view s);

/// How customer risk aversion is drawn in one Monte Carlo iteration.
enum class RhoSharing {
    Shared,     // one draw evaluates every entity's offer
    PerEntity,  // an independent draw for each entity
};

/// Exit probabilities q(j) for years 1..T-1; the remainder is the stay probability.
struct ExitProfile {
    std::vector<double> q_exit;

    double stay() const noexcept;
    friend bool operator==(const ExitProfile&, const ExitProfile&) = default;
};

struct PensionScenario {
    double capital = 30000.0;
    double earn_rate = 0.07;
    PriceGrid offer_grid{0.025, 0.07, 0.005};
    int horizon = 8;
    double penalty_fraction = 0.8;
    ExitProfile exit_profile;
    std::map<ScoreClass, CategoricalPMF> competitor_offers;
    ScoreClass score_class = ScoreClass::None;
    int n_competitors = 1;
    double rho_lo = 0.85;
    double rho_hi = 0.95;
    double money_unit = 1e4;
    std::size_t mc_draws = 10000;
    RhoSharing rho_sharing = RhoSharing::Shared;
    /// Customer's evaluation of capital availability, as (years, value) knots; empty means 0.
    std::vector<std::pair<double, double>> g_table;

    /// Offer pmf for the scenario's score class.
    const CategoricalPMF& offers() const;

    std::vector<std::string> violations() const;
    void validate() const;

    friend bool operator==(const PensionScenario&, const PensionScenario&) = default;
};

/// Tabulated g evaluated at the horizon (linear interpolation, flat outside).
double g_value(const PensionScenario& scenario);

/// Customer expected utility of a plan paying rate h, with u(w) = 1 - exp(-rho w) in money units.
double customer_eu(double h, const PensionScenario& scenario, double rho);

struct AcceptanceEstimate {
    double prob = 0.0;
    double std_err = 0.0;
};

/// Monte Carlo acceptance of our offer h1 against n_competitors rival offers.
AcceptanceEstimate acceptance_prob(double h1, const PensionScenario& scenario, RngStream rng);

/// [Pr(h2 < h1)]^n_competitors.
double acceptance_prob_reduced(double h1, const CategoricalPMF& offers, int n_competitors);

/// Risk-neutral bank: (z - h1) * x / money_unit * accept_prob.
double bank_expected_utility(double h1, double accept_prob, const PensionScenario& scenario);

enum class BenefitMode { NextYear, Horizon };

double expected_benefit(double h1, double accept_prob, const PensionScenario& scenario,
                        BenefitMode mode);

struct OfferRow {
    double rate = 0.0;
    double accept_prob = 0.0;
    double expected_utility = 0.0;
    double benefit_next_year = 0.0;
    double benefit_horizon = 0.0;
    double std_err = 0.0;
};

struct OfferEvaluation {
    std::vector<OfferRow> rows;
    std::size_t optimum_index = 0;
    double optimum_rate = 0.0;

    const OfferRow& optimum() const { return rows.at(optimum_index); }
};

/// Scans the offer grid. Every grid point reuses the same random numbers, so
/// the acceptance curve is free of between-point noise.
OfferEvaluation optimize_offer(const PensionScenario& scenario, const RngStream& rng,
                               unsigned workers = 1);

}  // namespace ara::pension
