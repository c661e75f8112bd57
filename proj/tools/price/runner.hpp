#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenario.hpp"

namespace price {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::optional<std::string> out;
};

/// One finished engine run, rendered but not yet written.
struct RunArtifact {
    std::string stem;     // output path without extension
    std::string curve;    // CSV or JSON text, depending on the scenario format
    nlohmann::json summary;
};

/// Runs the engine for the scenario (one artifact per batch entry).
std::vector<RunArtifact> run_scenario(const ScenarioFile& file, const RunOptions& opts);

/// Runs and writes <stem>.csv|.json plus <stem>.summary.json. Returns an exit code.
int run_command(const ScenarioFile& file, const RunOptions& opts, std::ostream& log);

/// Engine-vs-oracle comparison; writes <stem>.oracle.csv. Returns 0 on pass, 1 on fail.
int compare_command(const ScenarioFile& file, double z_threshold, const RunOptions& opts,
                    std::ostream& log);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

}  // namespace price
