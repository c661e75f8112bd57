#pragma once

// Deterministic reference values for the Monte Carlo estimators. Nothing here
// draws random numbers.

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "ara/distributions.hpp"
#include "ara/evaluation.hpp"
#include "ara/pension.hpp"
#include "ara/retail.hpp"

namespace ara::oracle {

/// A competitor-price law with a density on [lo, hi].
struct PriceDensity {
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> pdf;
};

/// Point mass, discrete law (exact sum over atoms) or density.
using CompetitorPriceLaw = std::variant<PointMass, CategoricalPMF, PriceDensity>;

PriceDensity uniform_density(double lo, double hi);
PriceDensity power_density(const PowerPricePrior& prior);

struct RetailValue {
    double expected_utility = 0.0;
    double accept_prob = 0.0;
};

/// Expected utility and acceptance of retailer 1 at p1, integrating the
/// competitor price over `law` with composite Gauss-Legendre (`nodes` >= 16).
RetailValue quadrature_psi1_retail(double p1, const retail::RetailScenario& scenario,
                                   const CompetitorPriceLaw& law, std::size_t nodes = 1024);

/// Competitor's expected profit at p2 when retailer 1's price follows the scenario prior.
double quadrature_competitor_profit(double p2, const retail::RetailScenario& scenario,
                                    std::size_t nodes = 1024);

/// Exact acceptance by enumerating rival-offer multisets and integrating rho
/// with `rho_nodes`-point Gauss-Legendre. Throws std::length_error past 1e7 multisets.
double exhaustive_pension_acceptance(double h1, const pension::PensionScenario& scenario,
                                     std::size_t rho_nodes = 64);

struct ComparisonRow {
    double price = 0.0;
    double estimate = 0.0;
    double oracle = 0.0;
    double std_err = 0.0;
    double z = 0.0;
};

struct OracleReport {
    std::vector<ComparisonRow> rows;
    double max_abs_z = 0.0;
    double threshold = 3.0;
    bool passed = true;
};

/// z = (estimate - oracle) / std_err. A zero standard error gives z = 0 on an
/// exact match (within 1e-12 relative) and infinity otherwise.
OracleReport compare(std::span<const CurveRow> engine, std::span<const double> oracle_values,
                     double z_threshold = 3.0);

/// Same, using explicit (estimate, std_err) pairs for the engine side.
OracleReport compare(std::span<const double> prices, std::span<const double> estimates,
                     std::span<const double> std_errs, std::span<const double> oracle_values,
                     double z_threshold = 3.0);

}  // namespace ara::oracle
