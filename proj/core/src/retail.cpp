#include "ara/retail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ara/parallel.hpp"
#include "ara/special.hpp"

namespace ara::retail {

std::vector<std::string> RetailScenario::violations() const {
    std::vector<std::string> out;
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(v1) || !finite(p1_hat) || !(v1 < p1_hat)) out.push_back("v1: must be < p1_hat");
    if (!finite(v2) || !finite(p2_hat) || !(v2 < p2_hat)) out.push_back("v2: must be < p2_hat");
    if (!(prior_exponent >= 0.0) || !finite(prior_exponent)) {
        out.push_back("prior_exponent: must be >= 0");
    }
    if (!(grid_step > 0.0) || !finite(grid_step)) out.push_back("grid_step: must be > 0");
    if (n1 == 0) out.push_back("n1: must be >= 1");
    if (n2 == 0) out.push_back("n2: must be >= 1");
    if (fixed_sigma && !(*fixed_sigma > 0.0 && finite(*fixed_sigma))) {
        out.push_back("fixed_sigma: must be > 0");
    }
    if (known_p2 && !finite(*known_p2)) out.push_back("known_p2: must be finite");
    return out;
}

void RetailScenario::validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid retail scenario:";
    for (const auto& s : v) msg += " " + s + ";";
    throw InvariantError(msg);
}

double probit_choice_prob(double p1, double p2, double sigma) {
    if (!(sigma > 0.0)) throw std::domain_error("probit sigma must be > 0");
    return normal_cdf((p2 - p1) / sigma);
}

double t_choice_prob(double p1, double p2, const InverseGammaParams& alpha) {
    const StudentT t(2.0 * alpha.shape());
    return t.cdf(std::sqrt(alpha.shape() / alpha.scale()) * (p2 - p1));
}

double customer_accept_prob(double p1, double p2, const RetailScenario& scenario) {
    return scenario.fixed_sigma ? probit_choice_prob(p1, p2, *scenario.fixed_sigma)
                                : t_choice_prob(p1, p2, scenario.alpha);
}

namespace {

// Retailer 2's sale probability is the complement of retailer 1's, with the
// competitor's own beliefs about customer noise.
struct CompetitorSaleProb {
    explicit CompetitorSaleProb(const RetailScenario& s)
        : sigma(s.fixed_sigma), t(2.0 * s.beta.shape()), k(std::sqrt(s.beta.shape() / s.beta.scale())) {}

    double operator()(double p1, double p2) const {
        if (sigma) return normal_cdf((p1 - p2) / *sigma);
        return t.cdf(k * (p1 - p2));
    }

    std::optional<double> sigma;
    StudentT t;
    double k;
};

}  // namespace

double competitor_profit(double p2, std::span<const double> p1_samples,
                         const RetailScenario& scenario) {
    if (p1_samples.empty()) throw std::invalid_argument("competitor_profit: no p1 samples");
    const CompetitorSaleProb sale(scenario);
    double sum = 0.0;
    for (double p1 : p1_samples) sum += sale(p1, p2);
    return (p2 - scenario.v2) * sum / static_cast<double>(p1_samples.size());
}

std::vector<double> sample_p2(const RetailScenario& scenario, const RngStream& rng,
                              unsigned workers) {
    scenario.validate();
    const auto grid = scenario.p2_grid().points();
    const auto prior = scenario.p1_prior();
    const CompetitorSaleProb sale(scenario);
    std::vector<double> out(scenario.n1);
    parallel_for(scenario.n1, workers, [&](std::size_t r) {
        RngStream local = rng.derive(r);
        std::vector<double> p1(scenario.n2);
        for (auto& p : p1) p = sample_power_prior(prior, local);
        std::vector<double> profit(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            double sum = 0.0;
            for (double x : p1) sum += sale(x, grid[k]);
            profit[k] = (grid[k] - scenario.v2) * sum;
        }
        out[r] = grid[argmax_lowest(profit)];
    });
    return out;
}

Psi1Estimate estimate_psi1(double p1, std::span<const double> p2_samples,
                           const RetailScenario& scenario) {
    if (p2_samples.empty()) throw std::invalid_argument("estimate_psi1: no competitor samples");
    const double margin = p1 - scenario.v1;
    const bool perishable = scenario.utility == UtilityVariant::Perishable;
    const auto n = static_cast<double>(p2_samples.size());

    double sum = 0.0;
    double sum_sq = 0.0;
    double acc = 0.0;
    double acc_sq = 0.0;
    for (double p2 : p2_samples) {
        const double q = customer_accept_prob(p1, p2, scenario);
        const double term = perishable ? margin * q - scenario.v1 * (1.0 - q) : margin * q;
        sum += term;
        sum_sq += term * term;
        acc += q;
        acc_sq += q * q;
    }
    auto std_err = [n](double s, double s2) {
        if (n < 2.0) return 0.0;
        const double mean = s / n;
        return std::sqrt(std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) / n);
    };
    return Psi1Estimate{sum / n, std_err(sum, sum_sq), acc / n, std_err(acc, acc_sq)};
}

EvaluationCurve evaluate_p1_grid(const RetailScenario& scenario,
                                 std::span<const double> p2_samples, unsigned workers) {
    const auto grid = scenario.p1_grid().points();
    std::vector<CurveRow> rows(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t k) {
        const auto est = estimate_psi1(grid[k], p2_samples, scenario);
        rows[k] = CurveRow{grid[k], est.accept_prob, est.value, est.std_err};
    });
    return finalize_curve(std::move(rows));
}

RetailResult optimal_price_p1(const RetailScenario& scenario, const RngStream& rng,
                              unsigned workers) {
    scenario.validate();
    RetailResult result;
    result.p2_samples = scenario.known_p2 ? std::vector<double>{*scenario.known_p2}
                                          : sample_p2(scenario, rng, workers);
    result.curve = evaluate_p1_grid(scenario, result.p2_samples, workers);
    return result;
}

ChoiceModel make_choice_model(const RetailScenario& scenario) {
    return [scenario](std::span<const double> prices, RngStream&) {
        if (prices.size() != 2) throw std::invalid_argument("retail choice model has two products");
        const double q = customer_accept_prob(prices[0], prices[1], scenario);
        return std::vector<double>{q, 1.0 - q};
    };
}

}  // namespace ara::retail
