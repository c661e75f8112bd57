#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "runner.hpp"
#include "scenario.hpp"

using namespace price;

namespace {

std::filesystem::path case_path(const std::string& name) {
    return std::filesystem::path(CASES_DIR) / (name + ".json");
}

ScenarioError parse_error(const std::string& text) {
    try {
        parse_scenario_text(text);
    } catch (const ScenarioError& e) {
        return e;
    }
    ADD_FAILURE() << "expected a ScenarioError";
    return ScenarioError(kOk, {});
}

bool mentions(const ScenarioError& e, const std::string& needle) {
    for (const auto& p : e.problems()) {
        if (p.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST(ParseScenario, RetailCaseOne) {
    const auto f = load_scenario(case_path("retail_case1"));
    ASSERT_EQ(f.kind, Kind::Retail);
    const auto& s = std::get<ara::retail::RetailScenario>(f.params);
    EXPECT_EQ(s.v1, 5.0);
    EXPECT_EQ(s.p1_hat, 50.0);
    EXPECT_EQ(s.fixed_sigma, 0.01);
    EXPECT_EQ(s.known_p2, 30.0);
}

TEST(ParseScenario, PensionCaseOne) {
    const auto f = load_scenario(case_path("pension_case1"));
    const auto& s = std::get<ara::pension::PensionScenario>(f.params);
    EXPECT_EQ(s.capital, 30000.0);
    EXPECT_EQ(s.earn_rate, 0.07);
    EXPECT_EQ(s.horizon, 8);
    EXPECT_EQ(s.penalty_fraction, 0.8);
    EXPECT_EQ(s.exit_profile.q_exit,
              (std::vector<double>{0.15, 0.05, 0.04, 0.03, 0.02, 0.01, 0.0}));
}

TEST(ParseScenario, ProbabilitiesNotSummingToOneNameTheField) {
    auto doc = to_json(load_scenario(case_path("pension_case1")));
    doc["params"]["competitor_offers"]["none"]["probs"] =
        std::vector<double>{0.05, 0.1, 0.2, 0.2, 0.15, 0.1, 0.05, 0.05, 0.0, 0.0};
    const auto e = parse_error(doc.dump());
    EXPECT_EQ(e.code(), kInvariantError);
    EXPECT_TRUE(mentions(e, "params.competitor_offers.none"));
}

TEST(ParseScenario, ListsEveryProblem) {
    const auto e = parse_error(R"({"kind":"retail","params":{"v1":"five","v2":5,"p1_hat":50,
        "p2_hat":40,"colour":1}})");
    EXPECT_EQ(e.code(), kSchemaError);
    EXPECT_TRUE(mentions(e, "params.v1"));
    EXPECT_TRUE(mentions(e, "params.colour"));
}

TEST(ParseScenario, InvariantViolationsUseExitFour) {
    const auto e = parse_error(R"({"kind":"retail","params":{"v1":60,"v2":5,"p1_hat":50,
        "p2_hat":40,"n1":0}})");
    EXPECT_EQ(e.code(), kInvariantError);
    EXPECT_TRUE(mentions(e, "params.v1"));
    EXPECT_TRUE(mentions(e, "params.n1"));
}

TEST(ParseScenario, MalformedJsonIsSchemaError) {
    EXPECT_EQ(parse_error("{ not json").code(), kSchemaError);
    EXPECT_EQ(parse_error(R"({"kind":"auction","params":{}})").code(), kSchemaError);
}

TEST(ParseScenario, MissingFileUsesExitTwo) {
    try {
        load_scenario("/nonexistent/scenario.json");
        FAIL();
    } catch (const ScenarioError& e) {
        EXPECT_EQ(e.code(), kMissingFile);
    }
}

TEST(ParseScenario, RoundTripForEveryBundledCase) {
    for (const auto& entry : std::filesystem::directory_iterator(CASES_DIR)) {
        const auto first = load_scenario(entry.path());
        const auto second = parse_scenario(to_json(first));
        EXPECT_TRUE(first == second) << entry.path();
        EXPECT_EQ(to_json(first), to_json(second));
    }
}

TEST(RunScenario, RetailCaseOneOptimum) {
    const auto artifacts = run_scenario(load_scenario(case_path("retail_case1")), {});
    ASSERT_EQ(artifacts.size(), 1u);
    EXPECT_EQ(artifacts[0].summary["optimum"].get<double>(), 29.5);
    EXPECT_TRUE(artifacts[0].summary["benefit_next_year"].is_null());
}

TEST(RunScenario, CsvHeaderAndMetadata) {
    const auto artifacts = run_scenario(load_scenario(case_path("pension_case1")), {});
    const auto& csv = artifacts[0].curve;
    EXPECT_NE(csv.find("# engine=arapricing"), std::string::npos);
    EXPECT_NE(csv.find("seed=20240201"), std::string::npos);
    EXPECT_NE(csv.find("price,accept_prob,expected_utility,benefit_next_year,benefit_horizon,"
                       "std_err\n"),
              std::string::npos);
}

TEST(RunScenario, SummaryKeys) {
    const auto artifacts = run_scenario(load_scenario(case_path("retail_case3")), {});
    for (const char* key : {"optimum", "accept_prob_at_optimum", "expected_utility",
                            "benefit_next_year", "benefit_horizon", "seed", "n1", "n2",
                            "wall_ms"}) {
        EXPECT_TRUE(artifacts[0].summary.contains(key)) << key;
    }
}

TEST(RunScenario, TableTwoBatch) {
    const auto artifacts = run_scenario(load_scenario(case_path("pension_table2")), {});
    ASSERT_EQ(artifacts.size(), 4u);
    const double want[] = {0.05, 0.05, 0.06, 0.06};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(artifacts[i].summary["optimum"].get<double>(), want[i]) << i;
    }
    EXPECT_NE(artifacts[3].stem.find("_n10"), std::string::npos);
}

TEST(RunScenario, SameSeedSameCurveForAnyWorkerCount) {
    for (const char* name : {"retail_case3", "pension_case2_low", "template_three_sellers"}) {
        const auto file = load_scenario(case_path(name));
        RunOptions one;
        one.workers = 1;
        RunOptions four;
        four.workers = 4;
        const auto a = run_scenario(file, one);
        const auto b = run_scenario(file, four);
        EXPECT_EQ(a[0].curve, b[0].curve) << name;
    }
}

TEST(RunScenario, SeedOverrideChangesSampledCurve) {
    const auto file = load_scenario(case_path("retail_case3"));
    RunOptions other;
    other.seed = 1;
    EXPECT_NE(run_scenario(file, {})[0].curve, run_scenario(file, other)[0].curve);
}

TEST(CompareCommand, PensionPassesAgainstExactOracle) {
    const auto dir = std::filesystem::temp_directory_path() / "price_cli_test";
    RunOptions opts;
    opts.out = (dir / "pension").string();
    std::ostringstream log;
    EXPECT_EQ(compare_command(load_scenario(case_path("pension_case1")), 3.0, opts, log), kOk)
        << log.str();
    EXPECT_TRUE(std::filesystem::exists(dir / "pension.oracle.csv"));
}

TEST(CompareCommand, TemplateHasNoOracle) {
    std::ostringstream log;
    EXPECT_EQ(compare_command(load_scenario(case_path("template_three_sellers")), 3.0, {}, log),
              kSchemaError);
}

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.045), "0.045");
    EXPECT_EQ(format_number(29.5), "29.5");
    EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}
