#include "ara/pension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ara/evaluation.hpp"
#include "ara/parallel.hpp"

namespace ara::pension {

std::string to_string(ScoreClass c) {
    switch (c) {
        case ScoreClass::Low:
            return "low";
        case ScoreClass::High:
            return "high";
        case ScoreClass::None:
            break;
    }
    return "none";
}

std::optional<ScoreClass> score_class_from_string(std::string_view s) {
    if (s == "none") return ScoreClass::None;
    if (s == "low") return ScoreClass::Low;
    if (s == "high") return ScoreClass::High;
    return std::nullopt;
}

double ExitProfile::stay() const noexcept {
    double total = 0.0;
    for (double q : q_exit) total += q;
    return 1.0 - total;
}

const CategoricalPMF& PensionScenario::offers() const {
    const auto it = competitor_offers.find(score_class);
    if (it == competitor_offers.end()) {
        throw InvariantError("no competitor offers for score class " + to_string(score_class));
    }
    return it->second;
}

std::vector<std::string> PensionScenario::violations() const {
    std::vector<std::string> out;
    if (!(capital > 0.0) || !std::isfinite(capital)) out.push_back("capital: must be > 0");
    if (!(earn_rate > 0.0) || !std::isfinite(earn_rate)) out.push_back("earn_rate: must be > 0");
    if (auto why = offer_grid.defect()) out.push_back("offer_grid: " + *why);
    if (horizon < 1) out.push_back("horizon: must be >= 1");
    if (!(penalty_fraction >= 0.0 && penalty_fraction <= 1.0)) {
        out.push_back("penalty_fraction: must lie in [0, 1]");
    }
    if (horizon >= 1 && exit_profile.q_exit.size() != static_cast<std::size_t>(horizon - 1)) {
        out.push_back("exit_profile: needs horizon - 1 = " + std::to_string(horizon - 1) +
                      " probabilities");
    }
    for (std::size_t j = 0; j < exit_profile.q_exit.size(); ++j) {
        if (!(exit_profile.q_exit[j] >= 0.0)) {
            out.push_back("exit_profile[" + std::to_string(j) + "]: must be >= 0");
        }
    }
    if (exit_profile.stay() < -1e-9) out.push_back("exit_profile: probabilities sum above 1");
    if (!competitor_offers.contains(score_class)) {
        out.push_back("competitor_offers." + to_string(score_class) + ": missing");
    }
    if (n_competitors < 1) out.push_back("n_competitors: must be >= 1");
    if (!(rho_lo > 0.0) || !(rho_lo <= rho_hi) || !std::isfinite(rho_hi)) {
        out.push_back("rho_interval: needs 0 < lo <= hi");
    }
    if (!(money_unit > 0.0) || !std::isfinite(money_unit)) {
        out.push_back("money_unit: must be > 0");
    }
    if (mc_draws == 0) out.push_back("mc_draws: must be >= 1");
    for (std::size_t i = 1; i < g_table.size(); ++i) {
        if (!(g_table[i].first > g_table[i - 1].first)) {
            out.push_back("g_table: knots must be strictly ascending");
            break;
        }
    }
    return out;
}

void PensionScenario::validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid pension scenario:";
    for (const auto& s : v) msg += " " + s + ";";
    throw InvariantError(msg);
}

double g_value(const PensionScenario& s) {
    const auto& t = s.g_table;
    if (t.empty()) return 0.0;
    const double x = s.horizon;
    if (x <= t.front().first) return t.front().second;
    if (x >= t.back().first) return t.back().second;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (x <= t[i].first) {
            const double w = (x - t[i - 1].first) / (t[i].first - t[i - 1].first);
            return t[i - 1].second + w * (t[i].second - t[i - 1].second);
        }
    }
    return t.back().second;
}

namespace {

constexpr double kRangeTolerance = 1e-9;

bool in_offer_range(double h, const PensionScenario& s) {
    double lo = s.offer_grid.min();
    double hi = s.offer_grid.max();
    if (const auto it = s.competitor_offers.find(s.score_class); it != s.competitor_offers.end()) {
        lo = std::min(lo, it->second.values().front());
        hi = std::max(hi, it->second.values().back());
    }
    return h >= lo - kRangeTolerance && h <= hi + kRangeTolerance;
}

double eu_unchecked(double h, const PensionScenario& s, double rho, double g) {
    const double x = s.capital / s.money_unit;
    auto u = [rho](double w) { return -std::expm1(-rho * w); };
    double total = s.exit_profile.stay() * u(std::pow(1.0 + h, s.horizon) * x);
    const double kept = 1.0 - s.penalty_fraction;
    for (std::size_t j = 0; j < s.exit_profile.q_exit.size(); ++j) {
        const double q = s.exit_profile.q_exit[j];
        if (q == 0.0) continue;
        const double bonus = (std::pow(1.0 + h, static_cast<double>(j + 1)) - 1.0) * x;
        total += q * u(x + kept * bonus);
    }
    return total + g;
}

}  // namespace

double customer_eu(double h, const PensionScenario& scenario, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("customer_eu: rho must be > 0");
    if (!in_offer_range(h, scenario)) {
        throw std::out_of_range("customer_eu: rate " + std::to_string(h) +
                                " outside the offer range");
    }
    return eu_unchecked(h, scenario, rho, g_value(scenario));
}

AcceptanceEstimate acceptance_prob(double h1, const PensionScenario& scenario, RngStream rng) {
    scenario.validate();
    if (!in_offer_range(h1, scenario)) {
        throw std::out_of_range("acceptance_prob: rate outside the offer range");
    }
    const auto& offers = scenario.offers();
    const double g = g_value(scenario);
    const bool shared = scenario.rho_sharing == RhoSharing::Shared;
    const auto rivals = static_cast<std::size_t>(scenario.n_competitors);

    std::size_t accepted = 0;
    for (std::size_t d = 0; d < scenario.mc_draws; ++d) {
        const double rho0 = rng.uniform(scenario.rho_lo, scenario.rho_hi);
        const double ours = eu_unchecked(h1, scenario, rho0, g);
        bool win = true;
        // Every draw consumes the same number of variates so grid points stay aligned.
        for (std::size_t j = 0; j < rivals; ++j) {
            const double h2 = sample_categorical(offers, rng);
            const double rho_j = rng.uniform(scenario.rho_lo, scenario.rho_hi);
            if (win && !(ours > eu_unchecked(h2, scenario, shared ? rho0 : rho_j, g))) win = false;
        }
        if (win) ++accepted;
    }
    const auto n = static_cast<double>(scenario.mc_draws);
    const double p = static_cast<double>(accepted) / n;
    return AcceptanceEstimate{p, std::sqrt(p * (1.0 - p) / n)};
}

double acceptance_prob_reduced(double h1, const CategoricalPMF& offers, int n_competitors) {
    if (n_competitors < 1) throw std::invalid_argument("n_competitors must be >= 1");
    return std::pow(offers.prob_below(h1), n_competitors);
}

double bank_expected_utility(double h1, double accept_prob, const PensionScenario& scenario) {
    if (!(accept_prob >= 0.0 && accept_prob <= 1.0)) {
        throw std::invalid_argument("accept_prob must lie in [0, 1]");
    }
    return (scenario.earn_rate - h1) * (scenario.capital / scenario.money_unit) * accept_prob;
}

double expected_benefit(double h1, double accept_prob, const PensionScenario& s,
                        BenefitMode mode) {
    const double x = s.capital;
    const double z = s.earn_rate;
    if (mode == BenefitMode::NextYear) return (z - h1) * x * accept_prob;
    const double T = s.horizon;
    double total = s.exit_profile.stay() * (std::pow(1.0 + z, T) - std::pow(1.0 + h1, T)) * x;
    for (std::size_t j = 0; j < s.exit_profile.q_exit.size(); ++j) {
        const auto yr = static_cast<double>(j + 1);
        const double grown_z = std::pow(1.0 + z, yr);
        const double grown_h = std::pow(1.0 + h1, yr);
        total += s.exit_profile.q_exit[j] *
                 ((grown_z - grown_h) * x + s.penalty_fraction * (grown_h - 1.0) * x);
    }
    return accept_prob * total;
}

OfferEvaluation optimize_offer(const PensionScenario& scenario, const RngStream& rng,
                               unsigned workers) {
    scenario.validate();
    const auto grid = scenario.offer_grid.points();
    OfferEvaluation eval;
    eval.rows.resize(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t k) {
        const double h = grid[k];
        const auto acc = acceptance_prob(h, scenario, rng);
        eval.rows[k] = OfferRow{h,
                                acc.prob,
                                bank_expected_utility(h, acc.prob, scenario),
                                expected_benefit(h, acc.prob, scenario, BenefitMode::NextYear),
                                expected_benefit(h, acc.prob, scenario, BenefitMode::Horizon),
                                acc.std_err};
    });
    std::vector<double> eu(eval.rows.size());
    std::transform(eval.rows.begin(), eval.rows.end(), eu.begin(),
                   [](const OfferRow& r) { return r.expected_utility; });
    eval.optimum_index = argmax_lowest(eu);
    eval.optimum_rate = grid[eval.optimum_index];
    return eval;
}

}  // namespace ara::pension
