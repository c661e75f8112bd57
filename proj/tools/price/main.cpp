#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "runner.hpp"
#include "scenario.hpp"

namespace {

unsigned env_workers() {
    const char* v = std::getenv("PRICE_WORKERS");
    if (!v || !*v) return 1;
    try {
        return static_cast<unsigned>(std::stoul(v));
    } catch (const std::exception&) {
        std::cerr << "ignoring PRICE_WORKERS='" << v << "'\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adversarial personalized pricing engine"};
    app.require_subcommand(1);

    std::string path;
    std::uint64_t seed = 0;
    unsigned workers = env_workers();
    std::string out;
    double z = 3.0;

    auto* run = app.add_subcommand("run", "Run a scenario and write its curve and summary");
    run->add_option("scenario", path, "Scenario JSON file")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--workers", workers, "Worker threads (0 = all cores; default PRICE_WORKERS or 1)");
    auto* out_opt = run->add_option("--out", out, "Output path stem");

    auto* compare = app.add_subcommand("compare", "Compare the engine against the exact oracle");
    compare->add_option("scenario", path, "Scenario JSON file")->required();
    compare->add_option("--z", z, "z-score threshold")->capture_default_str();
    auto* cseed_opt = compare->add_option("--seed", seed, "Override the scenario seed");
    compare->add_option("--workers", workers, "Worker threads");
    auto* cout_opt = compare->add_option("--out", out, "Output path stem");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate->add_option("scenario", path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    price::ScenarioFile file;
    try {
        file = price::load_scenario(path);
    } catch (const price::ScenarioError& e) {
        for (const auto& p : e.problems()) std::cerr << path << ": " << p << "\n";
        return e.code();
    }
    if (validate->parsed()) {
        std::cout << path << ": valid " << price::to_string(file.kind) << " scenario\n";
        return price::kOk;
    }

    price::RunOptions opts;
    opts.workers = workers;
    if (*seed_opt || *cseed_opt) opts.seed = seed;
    if (*out_opt || *cout_opt) opts.out = out;

    if (run->parsed()) return price::run_command(file, opts, std::cout);
    return price::compare_command(file, z, opts, std::cout);
}
