#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ara/ara.hpp"
#include "ara/pension.hpp"
#include "ara/retail.hpp"

namespace price {

/// Generic template instance: one supported producer with a deterministic unit
/// cost, any number of competitors described by price beliefs, and a random-utility customer.
struct TemplateScenario {
    ara::PriceGrid grid{1.0, 10.0, 1.0};
    double producer_cost = 0.0;
    ara::UtilityFamily customer_family = ara::UtilityFamily::RiskNeutral;
    ara::ScalarDistribution customer_parameter = ara::PointMass{0.0};
    std::string customer_payoff = "value-minus-price";
    ara::ParameterSharing customer_sharing = ara::ParameterSharing::PerProduct;
    std::vector<std::pair<double, double>> customer_table;
    std::optional<ara::DiscreteOutcome> outcomes;
    std::vector<ara::ScalarDistribution> competitors;
    bool independent = true;
    std::size_t choice_draws = 200;
    std::size_t n_draws = 200;

    ara::RandomUtilitySpec customer_spec() const;
    ara::RandomUtilitySpec producer_spec() const;
    ara::OutcomeModel outcome_model() const;
    ara::AgentBeliefs beliefs() const;

    friend bool operator==(const TemplateScenario& a, const TemplateScenario& b);
};

enum class Kind { Retail, Pension, Template };
enum class Format { Csv, Json };

struct ScenarioFile {
    Kind kind = Kind::Retail;
    std::variant<ara::retail::RetailScenario, ara::pension::PensionScenario, TemplateScenario>
        params;
    std::uint64_t seed = 0;
    std::string output = "price_out";
    Format format = Format::Csv;
    /// Pension only: run once per rival count, overriding params.n_competitors.
    std::vector<int> batch_competitors;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

enum ExitCode : int {
    kOk = 0,
    kCompareFailed = 1,
    kMissingFile = 2,
    kSchemaError = 3,
    kInvariantError = 4,
    kNumericError = 5,
};

/// Parse failure carrying the exit code and every problem found, one per line.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(ExitCode code, std::vector<std::string> problems);

    ExitCode code() const noexcept { return code_; }
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    ExitCode code_;
    std::vector<std::string> problems_;
};

ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioFile& file);

std::string to_string(Kind k);

}  // namespace price
