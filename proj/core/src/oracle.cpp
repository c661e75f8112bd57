#include "ara/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ara/quadrature.hpp"
#include "ara/special.hpp"

namespace ara::oracle {

namespace {

constexpr std::size_t kPanelOrder = 16;
constexpr double kMultisetCap = 1e7;

QuadratureRule density_rule(double lo, double hi, std::size_t nodes) {
    if (nodes < kPanelOrder) throw std::invalid_argument("quadrature needs at least 16 nodes");
    return composite_gauss_legendre(nodes / kPanelOrder, kPanelOrder, lo, hi);
}

}  // namespace

PriceDensity uniform_density(double lo, double hi) {
    if (!(lo < hi)) throw InvariantError("uniform density needs lo < hi");
    const double d = 1.0 / (hi - lo);
    return PriceDensity{lo, hi, [d](double) { return d; }};
}

PriceDensity power_density(const PowerPricePrior& prior) {
    return PriceDensity{prior.lower(), prior.upper(), [prior](double p) { return prior.pdf(p); }};
}

RetailValue quadrature_psi1_retail(double p1, const retail::RetailScenario& scenario,
                                   const CompetitorPriceLaw& law, std::size_t nodes) {
    const double margin = p1 - scenario.v1;
    const bool perishable = scenario.utility == retail::UtilityVariant::Perishable;
    auto value = [&](double q) { return perishable ? margin * q - scenario.v1 * (1.0 - q) : margin * q; };

    if (const auto* pm = std::get_if<PointMass>(&law)) {
        if (nodes < kPanelOrder) throw std::invalid_argument("quadrature needs at least 16 nodes");
        const double q = retail::customer_accept_prob(p1, pm->value, scenario);
        return RetailValue{value(q), q};
    }
    if (const auto* pmf = std::get_if<CategoricalPMF>(&law)) {
        if (nodes < kPanelOrder) throw std::invalid_argument("quadrature needs at least 16 nodes");
        double q = 0.0;
        for (std::size_t i = 0; i < pmf->size(); ++i) {
            if (pmf->probs()[i] > 0.0) {
                q += pmf->probs()[i] * retail::customer_accept_prob(p1, pmf->values()[i], scenario);
            }
        }
        return RetailValue{value(q), q};
    }
    const auto& dens = std::get<PriceDensity>(law);
    // Split at p1, where the probit integrand bends sharply for small sigma.
    std::vector<std::pair<double, double>> pieces;
    if (p1 > dens.lo && p1 < dens.hi) {
        pieces = {{dens.lo, p1}, {p1, dens.hi}};
    } else {
        pieces = {{dens.lo, dens.hi}};
    }
    double acc = 0.0;
    for (const auto& [a, b] : pieces) {
        const auto rule = density_rule(a, b, nodes);
        acc += integrate(rule, [&](double p2) {
            return dens.pdf(p2) * retail::customer_accept_prob(p1, p2, scenario);
        });
    }
    return RetailValue{value(acc), acc};
}

double quadrature_competitor_profit(double p2, const retail::RetailScenario& scenario,
                                    std::size_t nodes) {
    const auto prior = scenario.p1_prior();
    const auto rule = density_rule(prior.lower(), prior.upper(), nodes);
    const double k = std::sqrt(scenario.beta.shape() / scenario.beta.scale());
    const StudentT t(2.0 * scenario.beta.shape());
    const double sale = integrate(rule, [&](double p1) {
        const double q = scenario.fixed_sigma ? normal_cdf((p1 - p2) / *scenario.fixed_sigma)
                                              : t.cdf(k * (p1 - p2));
        return prior.pdf(p1) * q;
    });
    return (p2 - scenario.v2) * sale;
}

namespace {

double log_multinomial(const std::vector<int>& counts, int n) {
    double out = std::lgamma(n + 1.0);
    for (int c : counts) out -= std::lgamma(c + 1.0);
    return out;
}

double binomial(double n, double k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Visits every composition of n into counts.size() nonnegative parts.
template <class Visit>
void for_each_multiset(std::vector<int>& counts, std::size_t pos, int remaining, Visit&& visit) {
    if (pos + 1 == counts.size()) {
        counts[pos] = remaining;
        visit(counts);
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        counts[pos] = c;
        for_each_multiset(counts, pos + 1, remaining - c, visit);
    }
}

// Fraction of [lo, hi] for which eu(h2, rho) < target. eu is increasing in rho.
double rho_fraction_below(double h2, double target, const pension::PensionScenario& s) {
    auto eu = [&](double rho) { return pension::customer_eu(h2, s, rho); };
    if (s.rho_lo == s.rho_hi) return eu(s.rho_lo) < target ? 1.0 : 0.0;
    if (!(eu(s.rho_lo) < target)) return 0.0;
    if (eu(s.rho_hi) < target) return 1.0;
    double a = s.rho_lo;
    double b = s.rho_hi;
    for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
        const double m = 0.5 * (a + b);
        (eu(m) < target ? a : b) = m;
    }
    return (0.5 * (a + b) - s.rho_lo) / (s.rho_hi - s.rho_lo);
}

}  // namespace

double exhaustive_pension_acceptance(double h1, const pension::PensionScenario& scenario,
                                     std::size_t rho_nodes) {
    scenario.validate();
    if (rho_nodes == 0) throw std::invalid_argument("rho_nodes must be >= 1");
    const auto& pmf = scenario.offers();
    std::vector<double> values;
    std::vector<double> probs;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        if (pmf.probs()[i] > 0.0) {
            values.push_back(pmf.values()[i]);
            probs.push_back(pmf.probs()[i]);
        }
    }
    const int n = scenario.n_competitors;
    const auto m = static_cast<double>(values.size());
    if (binomial(m + n - 1.0, n) > kMultisetCap) {
        throw std::length_error("exhaustive enumeration exceeds 1e7 offer combinations");
    }

    // Multiset weights do not depend on rho.
    std::vector<std::vector<int>> sets;
    std::vector<double> weights;
    std::vector<int> counts(values.size(), 0);
    for_each_multiset(counts, 0, n, [&](const std::vector<int>& c) {
        double logw = log_multinomial(c, n);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] > 0) logw += c[i] * std::log(probs[i]);
        }
        sets.push_back(c);
        weights.push_back(std::exp(logw));
    });

    auto accept_given_rho = [&](double rho0) {
        const double ours = pension::customer_eu(h1, scenario, rho0);
        std::vector<double> beat(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            beat[i] = scenario.rho_sharing == pension::RhoSharing::Shared
                          ? (ours > pension::customer_eu(values[i], scenario, rho0) ? 1.0 : 0.0)
                          : rho_fraction_below(values[i], ours, scenario);
        }
        double total = 0.0;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            double term = weights[s];
            for (std::size_t i = 0; i < values.size() && term != 0.0; ++i) {
                if (sets[s][i] > 0) term *= std::pow(beat[i], sets[s][i]);
            }
            total += term;
        }
        return total;
    };

    if (scenario.rho_lo == scenario.rho_hi) return accept_given_rho(scenario.rho_lo);
    const auto rule = gauss_legendre(rho_nodes, scenario.rho_lo, scenario.rho_hi);
    const double width = scenario.rho_hi - scenario.rho_lo;
    return integrate(rule, accept_given_rho) / width;
}

OracleReport compare(std::span<const double> prices, std::span<const double> estimates,
                     std::span<const double> std_errs, std::span<const double> oracle_values,
                     double z_threshold) {
    if (!(z_threshold > 0.0)) throw std::invalid_argument("z threshold must be > 0");
    const std::size_t n = prices.size();
    if (estimates.size() != n || std_errs.size() != n || oracle_values.size() != n) {
        throw std::invalid_argument("compare: engine and oracle lengths differ");
    }
    OracleReport report;
    report.threshold = z_threshold;
    report.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = estimates[i] - oracle_values[i];
        double z = 0.0;
        if (std_errs[i] > 0.0) {
            z = diff / std_errs[i];
        } else if (std::abs(diff) > 1e-12 * std::max(1.0, std::abs(oracle_values[i]))) {
            z = std::copysign(std::numeric_limits<double>::infinity(), diff);
        }
        report.rows.push_back({prices[i], estimates[i], oracle_values[i], std_errs[i], z});
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    }
    report.passed = report.max_abs_z <= z_threshold;
    return report;
}

OracleReport compare(std::span<const CurveRow> engine, std::span<const double> oracle_values,
                     double z_threshold) {
    std::vector<double> prices;
    std::vector<double> estimates;
    std::vector<double> errs;
    for (const auto& r : engine) {
        prices.push_back(r.price);
        estimates.push_back(r.expected_utility);
        errs.push_back(r.std_err);
    }
    return compare(prices, estimates, errs, oracle_values, z_threshold);
}

}  // namespace ara::oracle
