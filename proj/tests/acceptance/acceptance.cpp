// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--report FILE] [--strict]
//
// Exits 0 once every criterion has been evaluated; with --strict any FAIL
// gives exit 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ara/ara.hpp"
#include "ara/oracle.hpp"
#include "ara/pension.hpp"
#include "ara/retail.hpp"
#include "runner.hpp"
#include "scenario.hpp"

namespace fs = std::filesystem;
using namespace ara;

namespace {

// Tolerances and budgets.
constexpr double kCase1Optimum = 29.5;
constexpr double kCase1Seconds = 1.0;
constexpr double kCase3BandLo = 20.0;
constexpr double kCase3BandHi = 22.0;
constexpr double kCase3Accept = 0.63;
constexpr double kCase3AcceptTol = 0.06;
constexpr double kCase3Seconds = 10.0;
constexpr int kCase3Seeds = 30;
constexpr std::size_t kSigmaDraws = 1'000'000;
constexpr double kMarginalTol = 0.002;
constexpr double kPensionAcceptTol = 0.02;
constexpr double kCase1Accept = 0.55;
constexpr double kHorizonBenefit = 4128.3;
constexpr double kHorizonTol = 1.0;
constexpr double kTableSeconds = 5.0;
constexpr double kLowAccept = 0.65;
constexpr double kLowAcceptTol = 0.03;
constexpr double kHighOracle = 0.20;
constexpr double kZ = 3.0;
constexpr int kReductionScenarios = 50;
constexpr int kOracleScenarios = 20;
constexpr std::size_t kOracleDraws = 10'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [miss: " << what << "]";
        }
    }
};

price::ScenarioFile load(const std::string& name) {
    return price::load_scenario(fs::path(CASES_DIR) / (name + ".json"));
}

nlohmann::json run_summary(const price::ScenarioFile& file, std::optional<std::uint64_t> seed = {}) {
    price::RunOptions opts;
    opts.seed = seed;
    return price::run_scenario(file, opts).front().summary;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------------------

double g_case3_median_accept = -1.0;

Outcome retail_case1() {
    Outcome o;
    const auto file = load("retail_case1");
    const auto t0 = Clock::now();
    const auto a = run_summary(file);
    const double secs = seconds_since(t0);
    const auto b = run_summary(file);
    const double opt = a["optimum"].get<double>();
    o.detail << "optimum=" << opt << " accept=" << a["accept_prob_at_optimum"].get<double>()
             << " time=" << secs << "s";
    o.require(opt == kCase1Optimum, "optimum 29.5");
    o.require(b["optimum"] == a["optimum"] &&
                  b["expected_utility"] == a["expected_utility"],
              "repeat run identical");
    o.require(secs < kCase1Seconds, "under 1 s");
    return o;
}

Outcome retail_case3() {
    Outcome o;
    const auto file = load("retail_case3");
    std::vector<double> optima;
    std::vector<double> accepts;
    const auto t0 = Clock::now();
    for (int seed = 1; seed <= kCase3Seeds; ++seed) {
        const auto s = run_summary(file, static_cast<std::uint64_t>(seed));
        optima.push_back(s["optimum"].get<double>());
        accepts.push_back(s["accept_prob_at_optimum"].get<double>());
    }
    const double secs = seconds_since(t0);
    const double m_opt = median(optima);
    const double m_acc = median(accepts);
    g_case3_median_accept = m_acc;
    o.detail << "median optimum=" << m_opt << " (min " << *std::min_element(optima.begin(), optima.end())
             << ", max " << *std::max_element(optima.begin(), optima.end())
             << ") median accept=" << m_acc << " time=" << secs
             << "s; reference 21 / 0.63; fallback is criterion 4";
    o.require(m_opt >= kCase3BandLo && m_opt <= kCase3BandHi, "median optimum in [20,22]");
    o.require(near(m_acc, kCase3Accept, kCase3AcceptTol), "acceptance 0.63 +- 0.06");
    o.require(secs < kCase3Seconds, "under 10 s");
    return o;
}

Outcome retail_case2() {
    Outcome o;
    const auto s = run_summary(load("retail_case2"));
    const double opt = s["optimum"].get<double>();
    const double acc = s["accept_prob_at_optimum"].get<double>();
    o.detail << "optimum=" << opt << " accept=" << acc << " vs case-3 median accept "
             << g_case3_median_accept << "; reference values 26 / 0.88";
    o.require(opt < kCase1Optimum, "optimum below 29.5");
    o.require(acc > g_case3_median_accept, "acceptance above case 3");
    return o;
}

Outcome marginalisation() {
    Outcome o;
    const std::vector<std::pair<double, double>> alphas{{2, 2}, {0.5, 0.5}, {3, 1}};
    double worst = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const InverseGammaParams alpha(alphas[k].first, alphas[k].second);
        RngStream rng(4, k);
        std::vector<double> sigma(kSigmaDraws);
        for (auto& s : sigma) s = std::sqrt(sample_inverse_gamma(alpha, rng));
        double worst_here = 0.0;
        for (int i = -20; i <= 20; ++i) {
            const double d = 0.5 * i;
            double sum = 0.0;
            for (double s : sigma) sum += retail::probit_choice_prob(30.0 + d, 30.0, s);
            const double mc = sum / static_cast<double>(kSigmaDraws);
            worst_here = std::max(worst_here, std::abs(retail::t_choice_prob(30.0 + d, 30.0, alpha) - mc));
        }
        o.detail << "alpha=(" << alphas[k].first << "," << alphas[k].second
                 << ") max|diff|=" << worst_here << " ";
        worst = std::max(worst, worst_here);
    }
    o.require(worst <= kMarginalTol, "max diff <= 0.002");
    return o;
}

Outcome pension_case1() {
    Outcome o;
    const auto file = load("pension_case1");
    const auto& s = std::get<pension::PensionScenario>(file.params);
    const auto summary = run_summary(file);
    const double opt = summary["optimum"].get<double>();
    const auto est = pension::acceptance_prob(0.045, s, RngStream(file.seed, 0));
    const double exact = oracle::exhaustive_pension_acceptance(0.045, s);
    const double next = pension::expected_benefit(0.045, est.prob, s, pension::BenefitMode::NextYear);
    const double identity = (s.earn_rate - 0.045) * s.capital * est.prob;
    const double horizon =
        pension::expected_benefit(0.045, kCase1Accept, s, pension::BenefitMode::Horizon);
    o.detail << "optimum=" << opt << " accept(0.045)=" << est.prob << " oracle=" << exact
             << " next-year=" << next << " horizon(0.55)=" << horizon;
    o.require(opt == 0.045, "optimum 0.045");
    o.require(near(est.prob, kCase1Accept, kPensionAcceptTol), "acceptance 0.55 +- 0.02");
    o.require(near(exact, kCase1Accept, 1e-12), "oracle 0.55");
    o.require(near(next, identity, 1e-9 * std::abs(identity)), "next-year identity");
    o.require(near(horizon, kHorizonBenefit, kHorizonTol), "horizon 4128.3 +- 1");
    return o;
}

Outcome pension_table2() {
    Outcome o;
    const auto file = load("pension_table2");
    auto s = std::get<pension::PensionScenario>(file.params);
    const std::vector<std::tuple<int, double, double, double>> rows{
        {2, 0.05, 0.49, 0.05}, {5, 0.06, 0.59049, 0.06}, {10, 0.06, 0.34868, 0.06}};
    for (const auto& [n, h, exact, want_opt] : rows) {
        s.n_competitors = n;
        const auto t0 = Clock::now();
        const auto eval = pension::optimize_offer(s, RngStream(file.seed, 0));
        const double secs = seconds_since(t0);
        const auto est = pension::acceptance_prob(h, s, RngStream(file.seed, 0));
        o.detail << "n=" << n << ": accept(" << h << ")=" << est.prob << " optimum="
                 << eval.optimum_rate << " time=" << secs << "s; ";
        o.require(near(est.prob, exact, kPensionAcceptTol), "n=" + std::to_string(n) + " acceptance");
        o.require(eval.optimum_rate == want_opt, "n=" + std::to_string(n) + " optimum");
        o.require(secs < kTableSeconds, "n=" + std::to_string(n) + " under 5 s");
    }
    return o;
}

Outcome pension_case2() {
    Outcome o;
    const auto low_file = load("pension_case2_low");
    const auto high_file = load("pension_case2_high");
    const auto low = run_summary(low_file);
    const auto high = run_summary(high_file);
    const auto& hs = std::get<pension::PensionScenario>(high_file.params);
    const double low_opt = low["optimum"].get<double>();
    const double low_acc = low["accept_prob_at_optimum"].get<double>();
    const double high_opt = high["optimum"].get<double>();
    const double high_exact = oracle::exhaustive_pension_acceptance(0.05, hs);
    const auto high_est = pension::acceptance_prob(0.05, hs, RngStream(high_file.seed, 0));
    o.detail << "low: optimum=" << low_opt << " accept=" << low_acc << "; high: optimum="
             << high_opt << " accept(0.05)=" << high_est.prob << " oracle=" << high_exact;
    o.require(low_opt == 0.04, "low optimum 0.04");
    o.require(near(low_acc, kLowAccept, kLowAcceptTol), "low acceptance 0.65 +- 0.03");
    o.require(high_opt == 0.05, "high optimum 0.05");
    o.require(near(high_exact, kHighOracle, 1e-12), "high oracle 0.20");
    o.require(near(high_est.prob, kHighOracle, kPensionAcceptTol), "high acceptance near oracle");
    return o;
}

pension::PensionScenario random_pension(RngStream& rng) {
    pension::PensionScenario s;
    s.capital = 5000.0 + 95000.0 * rng.uniform();
    s.earn_rate = 0.06 + 0.06 * rng.uniform();
    s.horizon = 2 + static_cast<int>(rng.uniform() * 9.0);
    s.penalty_fraction = rng.uniform();
    std::vector<double> q(static_cast<std::size_t>(s.horizon - 1));
    const double exit_mass = 0.6 * rng.uniform();
    double total = 0.0;
    for (auto& x : q) total += (x = rng.uniform());
    for (auto& x : q) x *= exit_mass / total;
    s.exit_profile.q_exit = q;
    s.rho_lo = 0.2 + 1.5 * rng.uniform();
    s.rho_hi = s.rho_lo + 0.5 * rng.uniform();
    s.n_competitors = 1 + static_cast<int>(rng.uniform() * 5.0);
    s.mc_draws = 2000 + static_cast<std::size_t>(rng.uniform() * 8000.0);
    const int points = 6 + static_cast<int>(rng.uniform() * 8.0);
    const double lo = 0.005 * (2 + static_cast<int>(rng.uniform() * 4.0));
    s.offer_grid = PriceGrid(lo, lo + 0.005 * (points - 1), 0.005);
    std::vector<double> values = s.offer_grid.points();
    std::vector<double> probs(values.size());
    double mass = 0.0;
    for (auto& p : probs) mass += (p = rng.uniform() < 0.2 ? 0.0 : rng.uniform());
    if (mass == 0.0) mass += (probs.front() = 1.0);
    for (auto& p : probs) p /= mass;
    // Absorb rounding so the pmf sums to one within tolerance.
    probs.back() = std::max(0.0, 1.0 - std::accumulate(probs.begin(), probs.end() - 1, 0.0));
    s.competitor_offers.emplace(pension::ScoreClass::None, CategoricalPMF(values, probs));
    s.validate();
    return s;
}

Outcome reduction_property() {
    Outcome o;
    RngStream gen(8, 0);
    double worst = 0.0;
    int points = 0;
    int misses = 0;
    for (int k = 0; k < kReductionScenarios; ++k) {
        const auto s = random_pension(gen);
        const RngStream rng(8, 1 + static_cast<std::uint64_t>(k));
        for (double h : s.offer_grid.points()) {
            const auto est = pension::acceptance_prob(h, s, rng);
            const double p0 = pension::acceptance_prob_reduced(h, s.offers(), s.n_competitors);
            const double se = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(s.mc_draws));
            const double diff = std::abs(est.prob - p0);
            const double z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : INFINITY);
            worst = std::max(worst, z);
            ++points;
            if (z > kZ) ++misses;
        }
    }
    o.detail << kReductionScenarios << " scenarios, " << points << " grid points, max|z|="
             << worst << ", points beyond 3 s.e.=" << misses;
    o.require(worst <= kZ, "every point within 3 s.e.");
    return o;
}

Outcome retail_oracle_equivalence() {
    Outcome o;
    RngStream gen(9, 0);
    double worst = 0.0;
    int points = 0;
    for (int k = 0; k < kOracleScenarios; ++k) {
        retail::RetailScenario s;
        s.v1 = 1.0 + 9.0 * gen.uniform();
        s.p1_hat = s.v1 + 20.0 + 40.0 * gen.uniform();
        s.alpha = InverseGammaParams(0.5 + 2.5 * gen.uniform(), 0.5 + 2.5 * gen.uniform());
        if (gen.uniform() < 0.25) s.fixed_sigma = 0.5 + 4.5 * gen.uniform();
        s.grid_step = gen.uniform() < 0.5 ? 0.5 : 1.0;
        s.utility = gen.uniform() < 0.5 ? retail::UtilityVariant::NonPerishable
                                        : retail::UtilityVariant::Perishable;
        s.validate();

        const double lo = 5.0 + 10.0 * gen.uniform();
        const double hi = lo + 10.0 + 30.0 * gen.uniform();
        const bool use_power = gen.uniform() < 0.5;
        const PowerPricePrior prior(lo, hi, 3.0 * gen.uniform());
        const oracle::PriceDensity law =
            use_power ? oracle::power_density(prior) : oracle::uniform_density(lo, hi);

        RngStream draws(9, 1 + static_cast<std::uint64_t>(k));
        std::vector<double> p2(kOracleDraws);
        for (auto& p : p2) p = use_power ? sample_power_prior(prior, draws) : lo + (hi - lo) * draws.uniform();

        for (double p1 : s.p1_grid().points()) {
            const auto est = retail::estimate_psi1(p1, p2, s);
            const double exact = oracle::quadrature_psi1_retail(p1, s, law).expected_utility;
            const double diff = std::abs(est.value - exact);
            const double z = est.std_err > 0.0 ? diff / est.std_err
                                               : (diff <= 1e-12 * std::max(1.0, std::abs(exact)) ? 0.0 : INFINITY);
            worst = std::max(worst, z);
            ++points;
        }
    }
    o.detail << kOracleScenarios << " scenarios, " << points << " grid points, max|z|=" << worst;
    o.require(worst <= kZ, "every point within |z| <= 3");
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "price_acceptance_determinism";
    fs::remove_all(root);
    const std::vector<std::string> cases{"retail_case3", "pension_case1", "pension_table2",
                                         "template_three_sellers"};
    int files = 0;
    for (const auto& name : cases) {
        std::map<unsigned, fs::path> dirs;
        for (unsigned workers : {1u, 4u}) {
            const fs::path dir = root / (name + "_w" + std::to_string(workers));
            fs::create_directories(dir);
            const std::string cmd = std::string("\"") + PRICE_EXE + "\" run \"" +
                                    (fs::path(CASES_DIR) / (name + ".json")).string() +
                                    "\" --seed 77 --workers " + std::to_string(workers) +
                                    " --out \"" + (dir / name).string() + "\" > /dev/null";
            o.require(std::system(cmd.c_str()) == 0, name + " run exit 0");
            dirs[workers] = dir;
        }
        for (const auto& entry : fs::directory_iterator(dirs[1])) {
            const auto other = dirs[4] / entry.path().filename();
            const std::string fname = entry.path().filename().string();
            ++files;
            if (!fs::exists(other)) {
                o.require(false, fname + " missing");
                continue;
            }
            if (fname.ends_with(".summary.json")) {
                auto a = nlohmann::json::parse(slurp(entry.path()));
                auto b = nlohmann::json::parse(slurp(other));
                a.erase("wall_ms");
                b.erase("wall_ms");
                o.require(a == b, fname + " summary identical");
            } else {
                o.require(slurp(entry.path()) == slurp(other), fname + " bytes identical");
            }
        }
    }
    o.detail << files << " output files compared across 1 and 4 workers (summaries without wall_ms)";
    return o;
}

Outcome invariants() {
    Outcome o;
    RngStream gen(11, 0);

    // Choice probabilities sum to one.
    RandomUtilitySpec customer;
    customer.family = UtilityFamily::RiskNeutral;
    customer.payoff = payoff::value_minus_price();
    customer.parameter = UniformInterval(-5.0, 5.0);
    const OutcomeModel outcomes({DiscreteOutcome{{40.0, 60.0}, {0.5, 0.5}}});
    double worst_sum = 0.0;
    for (int k = 0; k < 20; ++k) {
        std::vector<double> prices(2 + static_cast<std::size_t>(gen.uniform() * 4.0));
        for (auto& p : prices) p = 10.0 + 40.0 * gen.uniform();
        RngStream rng(11, 1 + static_cast<std::uint64_t>(k));
        const auto probs = customer_choice_probs(prices, customer, outcomes, 500, rng);
        double total = 0.0;
        for (double p : probs) total += p;
        worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }
    o.require(worst_sum <= 1e-12, "choice probabilities sum to 1");

    // Retail acceptance nonincreasing in price.
    const auto retail_file = load("retail_case3");
    const auto& rs = std::get<retail::RetailScenario>(retail_file.params);
    const auto rcurve = retail::optimal_price_p1(rs, RngStream(retail_file.seed, 0)).curve;
    bool retail_mono = true;
    for (std::size_t i = 1; i < rcurve.rows.size(); ++i) {
        retail_mono &= rcurve.rows[i].accept_prob <= rcurve.rows[i - 1].accept_prob;
    }
    o.require(retail_mono, "retail acceptance nonincreasing");

    // Pension acceptance nondecreasing in rate.
    const auto pension_file = load("pension_case1");
    const auto& ps = std::get<pension::PensionScenario>(pension_file.params);
    const auto eval = pension::optimize_offer(ps, RngStream(pension_file.seed, 0));
    bool pension_mono = true;
    for (std::size_t i = 1; i < eval.rows.size(); ++i) {
        pension_mono &= eval.rows[i].accept_prob >= eval.rows[i - 1].accept_prob;
    }
    o.require(pension_mono, "pension acceptance nondecreasing");

    // Argmax unchanged when the producer utility is multiplied by c > 0.
    const PriceGrid grid(5.0, 50.0, 0.5);
    const auto choice = retail::make_choice_model(rs);
    std::vector<std::vector<double>> competitor(200);
    RngStream crng(11, 99);
    for (auto& c : competitor) c = {10.0 + 30.0 * crng.uniform()};
    auto producer = [](double c) {
        RandomUtilitySpec u;
        u.family = UtilityFamily::RiskNeutral;
        u.parameter = PointMass{5.0 * c};
        u.payoff = [c](double p, double) { return c * p; };
        return u;
    };
    RngStream base_rng(1, 1);
    const auto base = solve_supported_price(grid, producer(1.0), competitor, choice,
                                            OutcomeModel::none(), base_rng);
    bool scale_ok = true;
    for (double c : {0.001, 3.7, 250.0}) {
        RngStream r(1, 1);
        const auto scaled = solve_supported_price(grid, producer(c), competitor, choice,
                                                  OutcomeModel::none(), r);
        scale_ok &= scaled.optimum_index == base.optimum_index;
    }
    o.require(scale_ok, "argmax invariant under positive scaling");

    // Precondition validator flags constructed violations.
    RandomUtilitySpec seller;
    seller.parameter = PointMass{5.0};
    const auto empty = validate_problem(PriceGrid(50.0, 5.0, 0.5), seller, OutcomeModel::none(),
                                       ValidationConfig(100.0, 50));
    RandomUtilitySpec explosive = seller;
    explosive.payoff = [](double p, double) { return std::exp(p); };
    const auto unbounded = validate_problem(PriceGrid(5.0, 800.0, 1.0), explosive,
                                           OutcomeModel::none(), ValidationConfig(1e6, 100));
    const auto fine = validate_problem(grid, seller, OutcomeModel::none(), ValidationConfig(100.0, 100));
    o.require(!empty.find("grid")->passed, "empty grid flagged");
    o.require(!unbounded.find("utility_bound")->passed, "unbounded utility flagged");
    o.require(fine.ok(), "well-posed problem passes");

    o.detail << "max|sum-1|=" << worst_sum << " retail monotone=" << retail_mono
             << " pension monotone=" << pension_mono << " scaling=" << scale_ok;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string report_path;
    bool strict = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--report" && i + 1 < argc) {
            report_path = argv[++i];
        } else if (arg == "--strict") {
            strict = true;
        } else {
            std::cerr << "usage: acceptance [--report FILE] [--strict]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"retail case 1 optimum", retail_case1},
        {"retail case 3 over 30 seeds", retail_case3},
        {"retail case 2 qualitative", retail_case2},
        {"probit/t marginalisation", marginalisation},
        {"pension case 1", pension_case1},
        {"pension competitor scaling", pension_table2},
        {"pension score classes", pension_case2},
        {"reduction property suite", reduction_property},
        {"retail oracle equivalence", retail_oracle_equivalence},
        {"determinism across workers", determinism},
        {"invariant suite", invariants},
    };

    std::ostringstream report;
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.passed) ++failures;
        const std::string line = std::string(o.passed ? "PASS" : "FAIL") + "  " +
                                 std::to_string(i + 1) + ". " + criteria[i].first + ": " +
                                 o.detail.str() + "\n";
        report << line;
        std::cout << line << std::flush;
    }
    report << failures << " of " << criteria.size() << " criteria failed\n";
    std::cout << failures << " of " << criteria.size() << " criteria failed\n";

    if (!report_path.empty()) std::ofstream(report_path) << report.str();
    return strict && failures > 0 ? 1 : 0;
}
