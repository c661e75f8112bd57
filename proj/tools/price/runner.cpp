#include "runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ara/oracle.hpp"

#ifndef ARA_VERSION
#define ARA_VERSION "dev"
#endif

namespace price {

using nlohmann::json;

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

constexpr std::size_t kReferenceOversample = 10;

struct Meta {
    std::string kind;
    std::uint64_t seed = 0;
    std::uint64_t n1 = 0;
    std::uint64_t n2 = 0;
    std::vector<std::pair<std::string, std::string>> extra;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

json null_or(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

std::string render_csv(const Meta& meta, const Table& t) {
    std::ostringstream out;
    out << "# engine=arapricing " << ARA_VERSION << "\n";
    out << "# kind=" << meta.kind << " seed=" << meta.seed << " n1=" << meta.n1
        << " n2=" << meta.n2 << "\n";
    for (const auto& [k, v] : meta.extra) out << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << "\n";
    }
    return out.str();
}

std::string render_json(const Meta& meta, const Table& t) {
    json m = {{"engine", std::string("arapricing ") + ARA_VERSION},
              {"kind", meta.kind},
              {"seed", meta.seed},
              {"n1", meta.n1},
              {"n2", meta.n2}};
    for (const auto& [k, v] : meta.extra) m[k] = v;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) r[t.columns[c]] = row[c];
        rows.push_back(r);
    }
    return json{{"meta", m}, {"rows", rows}}.dump(2) + "\n";
}

json summary_json(const Meta& meta, double optimum, double accept, double eu,
                  std::optional<double> next_year, std::optional<double> horizon,
                  double wall_ms) {
    return json{{"optimum", optimum},
                {"accept_prob_at_optimum", accept},
                {"expected_utility", eu},
                {"benefit_next_year", null_or(next_year)},
                {"benefit_horizon", null_or(horizon)},
                {"seed", meta.seed},
                {"n1", meta.n1},
                {"n2", meta.n2},
                {"wall_ms", wall_ms},
                {"engine", std::string("arapricing ") + ARA_VERSION}};
}

void check_finite(const Table& t) {
    for (const auto& row : t.rows) {
        for (double v : row) {
            if (!std::isfinite(v)) throw std::runtime_error("engine produced a non-finite value");
        }
    }
}

RunArtifact finish(const ScenarioFile& file, std::string stem, const Meta& meta, const Table& t,
                   json summary) {
    check_finite(t);
    RunArtifact a;
    a.stem = std::move(stem);
    a.curve = file.format == Format::Json ? render_json(meta, t) : render_csv(meta, t);
    a.summary = std::move(summary);
    return a;
}

const std::vector<std::string> kRetailColumns = {"price", "accept_prob", "expected_utility",
                                                 "std_err"};
const std::vector<std::string> kPensionColumns = {"price",           "accept_prob",
                                                  "expected_utility", "benefit_next_year",
                                                  "benefit_horizon", "std_err"};

Table curve_table(const ara::EvaluationCurve& curve) {
    Table t{kRetailColumns, {}};
    for (const auto& r : curve.rows) {
        t.rows.push_back({r.price, r.accept_prob, r.expected_utility, r.std_err});
    }
    return t;
}

Table offer_table(const ara::pension::OfferEvaluation& eval) {
    Table t{kPensionColumns, {}};
    for (const auto& r : eval.rows) {
        t.rows.push_back({r.rate, r.accept_prob, r.expected_utility, r.benefit_next_year,
                          r.benefit_horizon, r.std_err});
    }
    return t;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto d = std::chrono::steady_clock::now() - start;
    return std::round(std::chrono::duration<double, std::milli>(d).count() * 1000.0) / 1000.0;
}

std::vector<int> pension_batch(const ScenarioFile& file,
                               const ara::pension::PensionScenario& s) {
    return file.batch_competitors.empty() ? std::vector<int>{s.n_competitors}
                                          : file.batch_competitors;
}

std::string batch_stem(const std::string& base, const ScenarioFile& file, int n) {
    return file.batch_competitors.empty() ? base : base + "_n" + std::to_string(n);
}

}  // namespace

std::vector<RunArtifact> run_scenario(const ScenarioFile& file, const RunOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(file.seed);
    const std::string stem = opts.out.value_or(file.output);
    const ara::RngStream rng(seed, 0);
    std::vector<RunArtifact> out;

    if (const auto* s = std::get_if<ara::retail::RetailScenario>(&file.params)) {
        const auto start = std::chrono::steady_clock::now();
        const auto result = ara::retail::optimal_price_p1(*s, rng, opts.workers);
        const double ms = elapsed_ms(start);
        Meta meta{"retail", seed, s->known_p2 ? 1 : s->n1, s->known_p2 ? 0 : s->n2, {}};
        const auto& best = result.curve.optimum();
        out.push_back(finish(file, stem, meta, curve_table(result.curve),
                             summary_json(meta, best.price, best.accept_prob,
                                          best.expected_utility, std::nullopt, std::nullopt,
                                          ms)));
    } else if (const auto* s = std::get_if<ara::pension::PensionScenario>(&file.params)) {
        for (int n : pension_batch(file, *s)) {
            auto scenario = *s;
            scenario.n_competitors = n;
            const auto start = std::chrono::steady_clock::now();
            const auto eval = ara::pension::optimize_offer(scenario, rng, opts.workers);
            const double ms = elapsed_ms(start);
            Meta meta{"pension", seed, scenario.mc_draws, static_cast<std::uint64_t>(n),
                      {{"n_competitors", std::to_string(n)},
                       {"score_class", ara::pension::to_string(scenario.score_class)}}};
            const auto& best = eval.optimum();
            out.push_back(finish(file, batch_stem(stem, file, n), meta, offer_table(eval),
                                 summary_json(meta, best.rate, best.accept_prob,
                                              best.expected_utility, best.benefit_next_year,
                                              best.benefit_horizon, ms)));
        }
    } else {
        const auto& t = std::get<TemplateScenario>(file.params);
        const auto start = std::chrono::steady_clock::now();
        const auto choice = ara::make_customer_choice_model(t.customer_spec(), t.outcome_model(),
                                                            t.choice_draws);
        ara::RngStream local = rng;
        const auto curve = ara::solve_supported_price(t.grid, t.producer_spec(), t.beliefs(),
                                                      choice, t.outcome_model(), t.n_draws,
                                                      local, opts.workers);
        const double ms = elapsed_ms(start);
        Meta meta{"template", seed, t.n_draws, t.choice_draws, {}};
        const auto& best = curve.optimum();
        out.push_back(finish(file, stem, meta, curve_table(curve),
                             summary_json(meta, best.price, best.accept_prob,
                                          best.expected_utility, std::nullopt, std::nullopt,
                                          ms)));
    }
    return out;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

int run_command(const ScenarioFile& file, const RunOptions& opts, std::ostream& log) {
    std::vector<RunArtifact> artifacts;
    try {
        artifacts = run_scenario(file, opts);
    } catch (const std::exception& e) {
        log << "numeric failure: " << e.what() << "\n";
        return kNumericError;
    }
    const std::string ext = file.format == Format::Json ? ".json" : ".csv";
    for (const auto& a : artifacts) {
        write_file(a.stem + ext, a.curve);
        write_file(a.stem + ".summary.json", a.summary.dump(2) + "\n");
        log << a.stem << ext << ": optimum " << format_number(a.summary["optimum"].get<double>())
            << ", accept " << format_number(a.summary["accept_prob_at_optimum"].get<double>())
            << "\n";
    }
    return kOk;
}

namespace {

std::string report_csv(const ara::oracle::OracleReport& r) {
    std::ostringstream out;
    out << "# threshold=" << format_number(r.threshold)
        << " max_abs_z=" << format_number(r.max_abs_z) << " passed=" << (r.passed ? 1 : 0)
        << "\n";
    out << "price,estimate,oracle,std_err,z\n";
    for (const auto& row : r.rows) {
        out << format_number(row.price) << "," << format_number(row.estimate) << ","
            << format_number(row.oracle) << "," << format_number(row.std_err) << ","
            << format_number(row.z) << "\n";
    }
    return out.str();
}

ara::oracle::OracleReport compare_retail(const ara::retail::RetailScenario& s,
                                         const ara::RngStream& rng, unsigned workers,
                                         double z) {
    const auto engine = ara::retail::optimal_price_p1(s, rng, workers);
    ara::oracle::CompetitorPriceLaw law = ara::PointMass{s.known_p2.value_or(0.0)};
    std::vector<double> ref_err(engine.curve.rows.size(), 0.0);
    if (!s.known_p2) {
        // Reference law: an independent, larger sample of the competitor's optimal price.
        auto big = s;
        big.n1 = s.n1 * kReferenceOversample;
        auto ref = ara::retail::sample_p2(big, rng.derive(0x0AC1E), workers);
        std::sort(ref.begin(), ref.end());
        std::vector<double> values;
        std::vector<double> probs;
        for (double v : ref) {
            if (values.empty() || values.back() != v) {
                values.push_back(v);
                probs.push_back(0.0);
            }
            probs.back() += 1.0 / static_cast<double>(ref.size());
        }
        double total = 0.0;
        for (double p : probs) total += p;
        for (double& p : probs) p /= total;
        law = ara::CategoricalPMF(values, probs);
        for (std::size_t k = 0; k < ref_err.size(); ++k) {
            ref_err[k] = ara::retail::estimate_psi1(engine.curve.rows[k].price, ref, s).std_err;
        }
    }
    std::vector<double> prices, est, se, oracle;
    for (std::size_t k = 0; k < engine.curve.rows.size(); ++k) {
        const auto& row = engine.curve.rows[k];
        prices.push_back(row.price);
        est.push_back(row.expected_utility);
        se.push_back(std::hypot(row.std_err, ref_err[k]));
        oracle.push_back(ara::oracle::quadrature_psi1_retail(row.price, s, law).expected_utility);
    }
    return ara::oracle::compare(prices, est, se, oracle, z);
}

ara::oracle::OracleReport compare_pension(const ara::pension::PensionScenario& s,
                                          const ara::RngStream& rng, unsigned workers,
                                          double z) {
    const auto eval = ara::pension::optimize_offer(s, rng, workers);
    std::vector<double> prices, est, se, oracle;
    const auto n = static_cast<double>(s.mc_draws);
    for (const auto& row : eval.rows) {
        const double exact = ara::oracle::exhaustive_pension_acceptance(row.rate, s);
        prices.push_back(row.rate);
        est.push_back(row.accept_prob);
        oracle.push_back(exact);
        se.push_back(std::sqrt(exact * (1.0 - exact) / n));
    }
    return ara::oracle::compare(prices, est, se, oracle, z);
}

}  // namespace

int compare_command(const ScenarioFile& file, double z_threshold, const RunOptions& opts,
                    std::ostream& log) {
    if (file.kind == Kind::Template) {
        log << "compare: no oracle is available for template scenarios\n";
        return kSchemaError;
    }
    if (!(z_threshold > 0.0)) {
        log << "compare: --z must be > 0\n";
        return kSchemaError;
    }
    const std::uint64_t seed = opts.seed.value_or(file.seed);
    const std::string stem = opts.out.value_or(file.output);
    const ara::RngStream rng(seed, 0);
    bool all_passed = true;
    try {
        if (const auto* s = std::get_if<ara::retail::RetailScenario>(&file.params)) {
            const auto report = compare_retail(*s, rng, opts.workers, z_threshold);
            write_file(stem + ".oracle.csv", report_csv(report));
            log << "retail: max |z| = " << format_number(report.max_abs_z) << " (threshold "
                << format_number(z_threshold) << ") " << (report.passed ? "PASS" : "FAIL")
                << "\n";
            all_passed = report.passed;
        } else {
            const auto& base = std::get<ara::pension::PensionScenario>(file.params);
            for (int n : pension_batch(file, base)) {
                auto s = base;
                s.n_competitors = n;
                const auto report = compare_pension(s, rng, opts.workers, z_threshold);
                write_file(batch_stem(stem, file, n) + ".oracle.csv", report_csv(report));
                log << "pension n=" << n << ": max |z| = " << format_number(report.max_abs_z)
                    << " (threshold " << format_number(z_threshold) << ") "
                    << (report.passed ? "PASS" : "FAIL") << "\n";
                all_passed = all_passed && report.passed;
            }
        }
    } catch (const std::exception& e) {
        log << "numeric failure: " << e.what() << "\n";
        return kNumericError;
    }
    return all_passed ? kOk : kCompareFailed;
}

}  // namespace price
