#include "ara/ara.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ara/parallel.hpp"
#include "ara/quadrature.hpp"

namespace ara {

namespace payoff {
PayoffFn price() {
    return [](double p, double) { return p; };
}
PayoffFn value_minus_price() {
    return [](double p, double s) { return s - p; };
}
PayoffFn value() {
    return [](double, double s) { return s; };
}
}  // namespace payoff

namespace {

// Trapezoid error on 1024 nodes dominates a tighter check.
constexpr double kMassTolerance = 1e-6;

double interpolate(const std::vector<std::pair<double, double>>& table, double x) {
    if (table.empty()) throw std::invalid_argument("tabulated utility has no knots");
    if (x <= table.front().first) return table.front().second;
    if (x >= table.back().first) return table.back().second;
    const auto it = std::upper_bound(table.begin(), table.end(), x,
                                     [](double v, const auto& knot) { return v < knot.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

double draw_parameter(const ScalarDistribution& prior, RngStream& rng) {
    return sample(prior, rng);
}

}  // namespace

double RandomUtilitySpec::utility(double price, bool chosen, double outcome, double theta) const {
    switch (family) {
        case UtilityFamily::RiskNeutral:
            return chosen ? payoff(price, outcome) - theta : 0.0;
        case UtilityFamily::PerishableRetail:
            return chosen ? payoff(price, outcome) - theta : -theta;
        case UtilityFamily::Cara:
            return chosen ? 1.0 - std::exp(-theta * payoff(price, outcome)) : 0.0;
        case UtilityFamily::Tabulated:
            return chosen ? theta * interpolate(table, payoff(price, outcome)) : 0.0;
    }
    return 0.0;
}

OutcomeModel::OutcomeModel(std::vector<OutcomeLaw> per_choice) : per_choice_(std::move(per_choice)) {
    if (per_choice_.empty()) throw InvariantError("outcome model needs at least one law");
}

OutcomeModel OutcomeModel::none() {
    return OutcomeModel({DiscreteOutcome{{0.0}, {1.0}}});
}

const OutcomeLaw& OutcomeModel::law(std::size_t choice) const {
    return per_choice_.size() == 1 ? per_choice_.front() : per_choice_.at(choice);
}

std::optional<std::string> OutcomeModel::defect() const {
    for (std::size_t c = 0; c < per_choice_.size(); ++c) {
        const auto prefix = "outcome law " + std::to_string(c) + ": ";
        if (const auto* d = std::get_if<DiscreteOutcome>(&per_choice_[c])) {
            if (d->values.empty() || d->values.size() != d->probs.size()) {
                return prefix + "values and probs must be nonempty and equally long";
            }
            double total = 0.0;
            for (double p : d->probs) {
                if (!(p >= 0.0)) return prefix + "negative probability";
                total += p;
            }
            if (std::abs(total - 1.0) > 1e-9) {
                return prefix + "probabilities sum to " + std::to_string(total);
            }
        } else {
            const auto& law = std::get<ContinuousOutcome>(per_choice_[c]);
            if (!law.density || !(law.lo < law.hi)) return prefix + "density needs lo < hi";
            const auto rule = trapezoid(kQuadratureNodes, law.lo, law.hi);
            double mass = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double dens = law.density(rule.nodes[i]);
                if (!(dens >= 0.0)) return prefix + "density must be nonnegative";
                mass += rule.weights[i] * dens;
            }
            if (std::abs(mass - 1.0) > kMassTolerance) {
                return prefix + "density integrates to " + std::to_string(mass);
            }
        }
    }
    return std::nullopt;
}

double OutcomeModel::expectation(std::size_t choice, const std::function<double(double)>& f) const {
    const auto& law = this->law(choice);
    if (const auto* d = std::get_if<DiscreteOutcome>(&law)) {
        double sum = 0.0;
        for (std::size_t i = 0; i < d->values.size(); ++i) {
            if (d->probs[i] != 0.0) sum += d->probs[i] * f(d->values[i]);
        }
        return sum;
    }
    const auto& c = std::get<ContinuousOutcome>(law);
    const auto rule = trapezoid(kQuadratureNodes, c.lo, c.hi);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double dens = c.density(rule.nodes[i]);
        if (dens != 0.0) sum += rule.weights[i] * dens * f(rule.nodes[i]);
    }
    return sum;
}

double OutcomeModel::sample(std::size_t choice, RngStream& rng) const {
    const auto& law = this->law(choice);
    if (const auto* d = std::get_if<DiscreteOutcome>(&law)) {
        const double u = rng.uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i < d->values.size(); ++i) {
            acc += d->probs[i];
            if (u <= acc) return d->values[i];
        }
        return d->values.back();
    }
    const auto& c = std::get<ContinuousOutcome>(law);
    // Rejection against the bounding box of the density on the trapezoid nodes.
    double peak = 0.0;
    const double h = (c.hi - c.lo) / static_cast<double>(kQuadratureNodes - 1);
    for (std::size_t i = 0; i < kQuadratureNodes; ++i) {
        peak = std::max(peak, c.density(c.lo + h * static_cast<double>(i)));
    }
    if (!(peak > 0.0)) return c.lo;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double s = rng.uniform(c.lo, c.hi);
        if (rng.uniform() * peak <= c.density(s)) return s;
    }
    return rng.uniform(c.lo, c.hi);
}

std::size_t resolve_choice_index(std::span<const double> eu) {
    if (eu.empty()) throw std::invalid_argument("resolve_choice: no products");
    if (eu.size() == 1) return 0;
    std::size_t best_rival = 1;
    for (std::size_t i = 2; i < eu.size(); ++i) {
        if (eu[i] > eu[best_rival]) best_rival = i;
    }
    return eu[0] > eu[best_rival] ? 0 : best_rival;
}

ChoiceOutcome resolve_choice(std::vector<double> expected_utilities) {
    const auto chosen = resolve_choice_index(expected_utilities);
    return ChoiceOutcome{chosen, std::move(expected_utilities)};
}

std::vector<double> customer_choice_probs(std::span<const double> prices,
                                          const RandomUtilitySpec& spec,
                                          const OutcomeModel& outcomes, std::size_t n_draws,
                                          RngStream& rng) {
    if (prices.empty()) throw std::invalid_argument("customer_choice_probs: empty price list");
    if (n_draws == 0) throw std::invalid_argument("customer_choice_probs: n_draws must be >= 1");
    if (auto why = outcomes.defect()) throw InvariantError("degenerate outcome model: " + *why);
    const std::size_t n = prices.size();
    if (n == 1) return {1.0};

    std::vector<std::size_t> counts(n, 0);
    std::vector<double> eu(n);
    const bool shared = spec.sharing == ParameterSharing::Shared;
    for (std::size_t d = 0; d < n_draws; ++d) {
        double theta = shared ? draw_parameter(spec.parameter, rng) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!shared) theta = draw_parameter(spec.parameter, rng);
            const double p = prices[i];
            eu[i] = outcomes.expectation(
                i, [&](double s) { return spec.utility(p, true, s, theta); });
        }
        ++counts[resolve_choice_index(eu)];
    }
    std::vector<double> freq(n);
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        freq[i] = static_cast<double>(counts[i]) / static_cast<double>(n_draws);
        partial += freq[i];
    }
    freq[n - 1] = counts[n - 1] == 0 ? 0.0 : 1.0 - partial;
    return freq;
}

ChoiceModel make_customer_choice_model(RandomUtilitySpec spec, OutcomeModel outcomes,
                                       std::size_t n_draws) {
    return [spec = std::move(spec), outcomes = std::move(outcomes), n_draws](
               std::span<const double> prices, RngStream& rng) {
        return customer_choice_probs(prices, spec, outcomes, n_draws, rng);
    };
}

std::vector<double> AgentBeliefs::sample(RngStream& rng) const {
    std::vector<double> prices(others.size());
    if (independent) {
        for (std::size_t j = 0; j < others.size(); ++j) prices[j] = ara::sample(others[j], rng);
        return prices;
    }
    const double u = rng.uniform();
    for (std::size_t j = 0; j < others.size(); ++j) prices[j] = quantile(others[j], u);
    return prices;
}

namespace {

// Expected utility of a producer at `price` given the customer's choice probabilities.
double producer_expected_utility(const RandomUtilitySpec& spec, const OutcomeModel& outcomes,
                                 std::size_t self, double price, double theta,
                                 std::span<const double> choice_probs) {
    double total = 0.0;
    for (std::size_t c = 0; c < choice_probs.size(); ++c) {
        if (choice_probs[c] == 0.0) continue;
        const bool chosen = c == self;
        total += choice_probs[c] * outcomes.expectation(c, [&](double s) {
            return spec.utility(price, chosen, s, theta);
        });
    }
    return total;
}

std::vector<double> full_price_vector(std::size_t self, double own_price,
                                      std::span<const double> others) {
    std::vector<double> prices;
    prices.reserve(others.size() + 1);
    for (std::size_t j = 0, k = 0; j <= others.size(); ++j) {
        prices.push_back(j == self ? own_price : others[k++]);
    }
    return prices;
}

}  // namespace

CompetitorPriceDraw sample_competitor_optimal_price(std::size_t target,
                                                    const RandomUtilitySpec& spec,
                                                    const AgentBeliefs& beliefs,
                                                    const ChoiceModel& choice_model,
                                                    const PriceGrid& grid,
                                                    std::size_t inner_draws, RngStream& rng,
                                                    const OutcomeModel& outcomes) {
    if (inner_draws == 0) throw std::invalid_argument("inner_draws must be >= 1");
    if (target > beliefs.others.size()) {
        throw std::invalid_argument("competitor index exceeds the number of products");
    }
    const auto points = grid.points();
    const double theta = draw_parameter(spec.parameter, rng);

    std::vector<std::vector<double>> others(inner_draws);
    for (auto& o : others) o = beliefs.sample(rng);

    std::vector<double> psi(points.size(), 0.0);
    for (std::size_t k = 0; k < points.size(); ++k) {
        double sum = 0.0;
        for (const auto& o : others) {
            const auto prices = full_price_vector(target, points[k], o);
            const auto probs = choice_model(prices, rng);
            sum += producer_expected_utility(spec, outcomes, target, points[k], theta, probs);
        }
        psi[k] = sum / static_cast<double>(inner_draws);
    }
    const auto best = argmax_lowest(psi);
    const bool flat = std::all_of(psi.begin(), psi.end(), [&](double v) { return v == psi[0]; });
    return CompetitorPriceDraw{points[best], flat};
}

EvaluationCurve solve_supported_price(const PriceGrid& grid, const RandomUtilitySpec& u1,
                                      std::span<const std::vector<double>> competitor_samples,
                                      const ChoiceModel& choice_model,
                                      const OutcomeModel& outcomes, RngStream& rng,
                                      unsigned workers) {
    if (!is_degenerate(u1.parameter)) {
        throw std::invalid_argument("supported utility must be a single deterministic member");
    }
    if (competitor_samples.empty()) {
        throw std::invalid_argument("solve_supported_price: no competitor-price samples");
    }
    if (auto why = outcomes.defect()) throw InvariantError("degenerate outcome model: " + *why);
    const auto points = grid.points();
    RngStream theta_rng(0, 0);
    const double theta = draw_parameter(u1.parameter, theta_rng);
    const auto n = static_cast<double>(competitor_samples.size());

    std::vector<CurveRow> rows(points.size());
    parallel_for(points.size(), workers, [&](std::size_t k) {
        RngStream local = rng.derive(k);
        const double p = points[k];
        double sum = 0.0;
        double sum_sq = 0.0;
        double accept = 0.0;
        for (const auto& others : competitor_samples) {
            const auto prices = full_price_vector(0, p, others);
            const auto probs = choice_model(prices, local);
            const double term = producer_expected_utility(u1, outcomes, 0, p, theta, probs);
            sum += term;
            sum_sq += term * term;
            accept += probs[0];
        }
        const double mean = sum / n;
        const double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
        rows[k] = CurveRow{p, accept / n, mean, std::sqrt(var / n)};
    });
    return finalize_curve(std::move(rows));
}

EvaluationCurve solve_supported_price(const PriceGrid& grid, const RandomUtilitySpec& u1,
                                      const AgentBeliefs& beliefs,
                                      const ChoiceModel& choice_model,
                                      const OutcomeModel& outcomes, std::size_t n_draws,
                                      RngStream& rng, unsigned workers) {
    if (n_draws == 0) throw std::invalid_argument("solve_supported_price: n_draws must be >= 1");
    std::vector<std::vector<double>> samples(n_draws);
    RngStream draws = rng.derive(0xC0FFEEull);
    for (auto& s : samples) s = beliefs.sample(draws);
    return solve_supported_price(grid, u1, samples, choice_model, outcomes, rng, workers);
}

std::size_t argmax_lowest(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmax of an empty range");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

EvaluationCurve finalize_curve(std::vector<CurveRow> rows) {
    if (rows.empty()) throw std::invalid_argument("evaluation curve has no rows");
    std::vector<double> eu(rows.size());
    std::transform(rows.begin(), rows.end(), eu.begin(),
                   [](const CurveRow& r) { return r.expected_utility; });
    EvaluationCurve curve;
    curve.optimum_index = argmax_lowest(eu);
    curve.optimum_price = rows[curve.optimum_index].price;
    curve.optimum_utility = rows[curve.optimum_index].expected_utility;
    curve.degenerate = std::all_of(eu.begin(), eu.end(), [&](double v) { return v == eu[0]; });
    curve.rows = std::move(rows);
    return curve;
}

}  // namespace ara
