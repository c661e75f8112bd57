#include <cmath>
#include <sstream>

#include "ara/ara.hpp"

namespace ara {

ValidationConfig::ValidationConfig(double utility_bound, std::size_t probe_count)
    : utility_bound_(utility_bound), probe_count_(probe_count) {
    if (!(utility_bound >= 0.0)) throw InvariantError("utility bound must be >= 0");
    if (probe_count == 0) throw InvariantError("probe count must be >= 1");
}

bool ValidationReport::ok() const noexcept {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

const ValidationCheck* ValidationReport::find(std::string_view name) const noexcept {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport validate_problem(const PriceGrid& grid, const RandomUtilitySpec& spec,
                                  const OutcomeModel& outcomes, const ValidationConfig& cfg,
                                  RngStream rng) {
    ValidationReport report;

    const auto grid_defect = grid.defect();
    report.checks.push_back({"grid", !grid_defect, grid_defect.value_or("compact and nonempty")});

    const auto outcome_defect = outcomes.defect();
    report.checks.push_back(
        {"outcomes", !outcome_defect, outcome_defect.value_or("normalised")});

    // Boundedness probes need a usable grid and outcome model to draw from.
    ValidationCheck bounded{"utility_bound", true, ""};
    if (grid_defect || outcome_defect) {
        bounded.passed = false;
        bounded.detail = "not probed: grid or outcome model invalid";
    } else {
        const auto points = grid.points();
        const double limit = spec.declared_bound
                                 ? std::min(cfg.utility_bound(), *spec.declared_bound)
                                 : cfg.utility_bound();
        const std::size_t n_choices = std::max<std::size_t>(outcomes.size(), 2);
        for (std::size_t k = 0; k < cfg.probe_count() && bounded.passed; ++k) {
            const auto idx = static_cast<std::size_t>(rng.uniform() *
                                                      static_cast<double>(points.size()));
            const double price = points[std::min(idx, points.size() - 1)];
            const auto c = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_choices));
            const std::size_t choice = std::min(c, n_choices - 1);
            const double s = outcomes.sample(choice, rng);
            const double theta = sample(spec.parameter, rng);
            const double u = spec.utility(price, choice == 0, s, theta);
            if (!std::isfinite(u) || std::abs(u) > limit) {
                std::ostringstream msg;
                msg << "|u| = " << std::abs(u) << " exceeds " << limit << " at price=" << price
                    << " c=" << choice << " s=" << s << " theta=" << theta;
                bounded.passed = false;
                bounded.detail = msg.str();
            }
        }
        if (bounded.passed) {
            bounded.detail = std::to_string(cfg.probe_count()) + " probes within bound";
        }
    }
    report.checks.push_back(std::move(bounded));
    return report;
}

}  // namespace ara
