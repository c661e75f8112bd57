#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace price {

using nlohmann::json;

namespace {

const char* family_name(ara::UtilityFamily f) {
    switch (f) {
        case ara::UtilityFamily::RiskNeutral:
            return "risk-neutral";
        case ara::UtilityFamily::Cara:
            return "cara";
        case ara::UtilityFamily::PerishableRetail:
            return "perishable";
        case ara::UtilityFamily::Tabulated:
            return "tabulated";
    }
    return "risk-neutral";
}

std::optional<ara::UtilityFamily> family_from(const std::string& s) {
    if (s == "risk-neutral") return ara::UtilityFamily::RiskNeutral;
    if (s == "cara") return ara::UtilityFamily::Cara;
    if (s == "perishable") return ara::UtilityFamily::PerishableRetail;
    if (s == "tabulated") return ara::UtilityFamily::Tabulated;
    return std::nullopt;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

// Walks a JSON document collecting every schema and invariant problem with its field path.
class Reader {
public:
    std::vector<std::string> schema;
    std::vector<std::string> invariant;

    bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        if (!j.is_object()) {
            schema.push_back(path + ": expected an object");
            return false;
        }
        for (const auto& [key, _] : j.items()) {
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) schema.push_back(join(path, key) + ": unknown field");
        }
        return true;
    }

    const json* field(const json& obj, const std::string& key, const std::string& path,
                      bool required) {
        if (obj.is_object() && obj.contains(key)) return &obj.at(key);
        if (required) schema.push_back(join(path, key) + ": missing required field");
        return nullptr;
    }

    double number(const json& obj, const std::string& key, const std::string& path,
                  std::optional<double> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback);
        if (!v) return fallback.value_or(0.0);
        if (!v->is_number()) {
            schema.push_back(join(path, key) + ": expected a number");
            return 0.0;
        }
        return v->get<double>();
    }

    std::optional<double> optional_number(const json& obj, const std::string& key,
                                          const std::string& path) {
        const json* v = field(obj, key, path, false);
        if (!v || v->is_null()) return std::nullopt;
        if (!v->is_number()) {
            schema.push_back(join(path, key) + ": expected a number or null");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::uint64_t count(const json& obj, const std::string& key, const std::string& path,
                        std::optional<std::uint64_t> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback);
        if (!v) return fallback.value_or(0);
        if (v->is_number_unsigned()) return v->get<std::uint64_t>();
        if (v->is_number_integer()) {
            invariant.push_back(join(path, key) + ": must be >= 0");
            return 0;
        }
        schema.push_back(join(path, key) + ": expected a nonnegative integer");
        return 0;
    }

    std::int64_t integer(const json& obj, const std::string& key, const std::string& path,
                         std::optional<std::int64_t> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback);
        if (!v) return fallback.value_or(0);
        if (!v->is_number_integer()) {
            schema.push_back(join(path, key) + ": expected an integer");
            return 0;
        }
        return v->get<std::int64_t>();
    }

    std::string text(const json& obj, const std::string& key, const std::string& path,
                     std::optional<std::string> fallback = std::nullopt) {
        const json* v = field(obj, key, path, !fallback);
        if (!v) return fallback.value_or("");
        if (!v->is_string()) {
            schema.push_back(join(path, key) + ": expected a string");
            return fallback.value_or("");
        }
        return v->get<std::string>();
    }

    std::vector<double> numbers(const json& obj, const std::string& key, const std::string& path,
                                bool required = true) {
        const json* v = field(obj, key, path, required);
        std::vector<double> out;
        if (!v) return out;
        if (!v->is_array()) {
            schema.push_back(join(path, key) + ": expected an array of numbers");
            return out;
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_number()) {
                schema.push_back(index(join(path, key), i) + ": expected a number");
                continue;
            }
            out.push_back((*v)[i].get<double>());
        }
        return out;
    }

    std::vector<std::pair<double, double>> pairs(const json& obj, const std::string& key,
                                                 const std::string& path) {
        const json* v = field(obj, key, path, false);
        std::vector<std::pair<double, double>> out;
        if (!v) return out;
        const auto p = join(path, key);
        if (!v->is_array()) {
            schema.push_back(p + ": expected an array of [x, y] pairs");
            return out;
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            const auto& e = (*v)[i];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                schema.push_back(index(p, i) + ": expected [x, y]");
                continue;
            }
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (!(out[i].first > out[i - 1].first)) {
                invariant.push_back(p + ": x values must be strictly ascending");
                break;
            }
        }
        return out;
    }

    ara::InverseGammaParams inverse_gamma(const json& obj, const std::string& key,
                                          const std::string& path, ara::InverseGammaParams def) {
        const json* v = field(obj, key, path, false);
        if (!v) return def;
        const auto p = join(path, key);
        if (!object(*v, p, {"shape", "scale"})) return def;
        const double shape = number(*v, "shape", p);
        const double scale = number(*v, "scale", p);
        return guard(p, def, [&] { return ara::InverseGammaParams(shape, scale); });
    }

    ara::PriceGrid grid(const json& obj, const std::string& key, const std::string& path,
                        ara::PriceGrid def) {
        const json* v = field(obj, key, path, true);
        if (!v) return def;
        const auto p = join(path, key);
        if (!object(*v, p, {"min", "max", "step"})) return def;
        ara::PriceGrid g(number(*v, "min", p), number(*v, "max", p), number(*v, "step", p));
        if (auto why = g.defect()) invariant.push_back(p + ": " + *why);
        return g;
    }

    std::optional<ara::CategoricalPMF> pmf(const json& v, const std::string& p) {
        if (!object(v, p, {"values", "probs"})) return std::nullopt;
        auto values = numbers(v, "values", p);
        auto probs = numbers(v, "probs", p);
        return guard<std::optional<ara::CategoricalPMF>>(p, std::nullopt, [&] {
            return std::optional(ara::CategoricalPMF(values, probs));
        });
    }

    ara::ScalarDistribution distribution(const json& v, const std::string& p) {
        const ara::ScalarDistribution fallback = ara::PointMass{0.0};
        if (!v.is_object()) {
            schema.push_back(p + ": expected a distribution object");
            return fallback;
        }
        const auto type = text(v, "type", p);
        if (type == "point") {
            object(v, p, {"type", "value"});
            return ara::PointMass{number(v, "value", p)};
        }
        if (type == "uniform") {
            object(v, p, {"type", "lo", "hi"});
            const double lo = number(v, "lo", p);
            const double hi = number(v, "hi", p);
            return guard<ara::ScalarDistribution>(p, fallback,
                                                  [&] { return ara::UniformInterval(lo, hi); });
        }
        if (type == "power") {
            object(v, p, {"type", "lower", "upper", "exponent"});
            const double lo = number(v, "lower", p);
            const double hi = number(v, "upper", p);
            const double n = number(v, "exponent", p);
            return guard<ara::ScalarDistribution>(
                p, fallback, [&] { return ara::PowerPricePrior(lo, hi, n); });
        }
        if (type == "categorical") {
            object(v, p, {"type", "values", "probs"});
            auto values = numbers(v, "values", p);
            auto probs = numbers(v, "probs", p);
            return guard<ara::ScalarDistribution>(
                p, fallback, [&] { return ara::CategoricalPMF(values, probs); });
        }
        if (type == "empirical") {
            object(v, p, {"type", "samples"});
            auto samples = numbers(v, "samples", p);
            return guard<ara::ScalarDistribution>(
                p, fallback, [&] { return ara::EmpiricalDistribution(samples); });
        }
        if (!type.empty()) {
            schema.push_back(join(p, "type") + ": unknown distribution '" + type +
                             "' (point, uniform, power, categorical, empirical)");
        }
        return fallback;
    }

    template <class T, class Build>
    T guard(const std::string& path, T fallback, Build&& build) {
        try {
            return build();
        } catch (const std::invalid_argument& e) {
            invariant.push_back(path + ": " + e.what());
            return fallback;
        }
    }
};

ara::retail::RetailScenario read_retail(Reader& r, const json& j, const std::string& p) {
    ara::retail::RetailScenario s;
    if (!r.object(j, p,
                  {"v1", "v2", "p1_hat", "p2_hat", "alpha", "beta", "prior_exponent", "grid_step",
                   "n1", "n2", "fixed_sigma", "known_p2", "utility"})) {
        return s;
    }
    s.v1 = r.number(j, "v1", p);
    s.v2 = r.number(j, "v2", p);
    s.p1_hat = r.number(j, "p1_hat", p);
    s.p2_hat = r.number(j, "p2_hat", p);
    s.alpha = r.inverse_gamma(j, "alpha", p, s.alpha);
    s.beta = r.inverse_gamma(j, "beta", p, s.beta);
    s.prior_exponent = r.number(j, "prior_exponent", p, s.prior_exponent);
    s.grid_step = r.number(j, "grid_step", p, s.grid_step);
    s.n1 = r.count(j, "n1", p, s.n1);
    s.n2 = r.count(j, "n2", p, s.n2);
    s.fixed_sigma = r.optional_number(j, "fixed_sigma", p);
    s.known_p2 = r.optional_number(j, "known_p2", p);
    const auto utility = r.text(j, "utility", p, "non-perishable");
    if (utility == "perishable") {
        s.utility = ara::retail::UtilityVariant::Perishable;
    } else if (utility != "non-perishable") {
        r.schema.push_back(join(p, "utility") + ": expected 'non-perishable' or 'perishable'");
    }
    for (const auto& v : s.violations()) r.invariant.push_back(join(p, v));
    return s;
}

ara::pension::PensionScenario read_pension(Reader& r, const json& j, const std::string& p) {
    ara::pension::PensionScenario s;
    if (!r.object(j, p,
                  {"capital", "earn_rate", "offer_grid", "horizon", "penalty_fraction",
                   "exit_profile", "competitor_offers", "score_class", "n_competitors",
                   "rho_interval", "money_unit", "mc_draws", "rho_sharing", "g_table"})) {
        return s;
    }
    const std::size_t before = r.invariant.size();
    s.capital = r.number(j, "capital", p);
    s.earn_rate = r.number(j, "earn_rate", p);
    s.offer_grid = r.grid(j, "offer_grid", p, s.offer_grid);
    s.horizon = static_cast<int>(r.integer(j, "horizon", p));
    s.penalty_fraction = r.number(j, "penalty_fraction", p, s.penalty_fraction);
    s.exit_profile.q_exit = r.numbers(j, "exit_profile", p);
    if (const json* offers = r.field(j, "competitor_offers", p, true)) {
        const auto op = join(p, "competitor_offers");
        if (r.object(*offers, op, {"none", "low", "high"})) {
            for (const auto& [key, value] : offers->items()) {
                const auto cls = ara::pension::score_class_from_string(key);
                if (!cls) continue;
                if (auto pmf = r.pmf(value, join(op, key))) s.competitor_offers.emplace(*cls, *pmf);
            }
        }
    }
    const auto cls = r.text(j, "score_class", p, "none");
    if (auto c = ara::pension::score_class_from_string(cls)) {
        s.score_class = *c;
    } else {
        r.schema.push_back(join(p, "score_class") + ": expected 'none', 'low' or 'high'");
    }
    s.n_competitors = static_cast<int>(r.integer(j, "n_competitors", p, s.n_competitors));
    const auto rho = r.numbers(j, "rho_interval", p, false);
    if (rho.size() == 2) {
        s.rho_lo = rho[0];
        s.rho_hi = rho[1];
    } else if (j.contains("rho_interval")) {
        r.schema.push_back(join(p, "rho_interval") + ": expected [lo, hi]");
    }
    s.money_unit = r.number(j, "money_unit", p, s.money_unit);
    s.mc_draws = r.count(j, "mc_draws", p, s.mc_draws);
    const auto sharing = r.text(j, "rho_sharing", p, "shared");
    if (sharing == "per-entity") {
        s.rho_sharing = ara::pension::RhoSharing::PerEntity;
    } else if (sharing != "shared") {
        r.schema.push_back(join(p, "rho_sharing") + ": expected 'shared' or 'per-entity'");
    }
    s.g_table = r.pairs(j, "g_table", p);
    if (r.invariant.size() == before) {
        for (const auto& v : s.violations()) r.invariant.push_back(join(p, v));
    }
    return s;
}

TemplateScenario read_template(Reader& r, const json& j, const std::string& p) {
    TemplateScenario s;
    if (!r.object(j, p,
                  {"grid", "producer_cost", "customer", "outcomes", "competitors", "independent",
                   "choice_draws", "n_draws"})) {
        return s;
    }
    s.grid = r.grid(j, "grid", p, s.grid);
    s.producer_cost = r.number(j, "producer_cost", p, 0.0);
    if (const json* c = r.field(j, "customer", p, true)) {
        const auto cp = join(p, "customer");
        if (r.object(*c, cp, {"family", "parameter", "payoff", "sharing", "table"})) {
            const auto fam = r.text(*c, "family", cp, "risk-neutral");
            if (auto f = family_from(fam)) {
                s.customer_family = *f;
            } else {
                r.schema.push_back(join(cp, "family") +
                                   ": expected risk-neutral, cara, perishable or tabulated");
            }
            if (const json* d = r.field(*c, "parameter", cp, false)) {
                s.customer_parameter = r.distribution(*d, join(cp, "parameter"));
            }
            s.customer_payoff = r.text(*c, "payoff", cp, s.customer_payoff);
            if (s.customer_payoff != "price" && s.customer_payoff != "value-minus-price" &&
                s.customer_payoff != "value") {
                r.schema.push_back(join(cp, "payoff") +
                                   ": expected price, value-minus-price or value");
            }
            const auto sharing = r.text(*c, "sharing", cp, "per-product");
            if (sharing == "shared") {
                s.customer_sharing = ara::ParameterSharing::Shared;
            } else if (sharing != "per-product") {
                r.schema.push_back(join(cp, "sharing") + ": expected 'shared' or 'per-product'");
            }
            s.customer_table = r.pairs(*c, "table", cp);
            if (s.customer_family == ara::UtilityFamily::Tabulated && s.customer_table.empty()) {
                r.invariant.push_back(join(cp, "table") + ": tabulated family needs knots");
            }
        }
    }
    if (const json* o = r.field(j, "outcomes", p, false)) {
        const auto op = join(p, "outcomes");
        if (r.object(*o, op, {"values", "probs"})) {
            ara::DiscreteOutcome d{r.numbers(*o, "values", op), r.numbers(*o, "probs", op)};
            if (auto why = ara::OutcomeModel({d}).defect()) r.invariant.push_back(op + ": " + *why);
            s.outcomes = std::move(d);
        }
    }
    if (const json* cs = r.field(j, "competitors", p, true)) {
        const auto cp = join(p, "competitors");
        if (!cs->is_array() || cs->empty()) {
            r.schema.push_back(cp + ": expected a nonempty array of distributions");
        } else {
            for (std::size_t i = 0; i < cs->size(); ++i) {
                s.competitors.push_back(r.distribution((*cs)[i], index(cp, i)));
            }
        }
    }
    if (const json* ind = r.field(j, "independent", p, false)) {
        if (ind->is_boolean()) {
            s.independent = ind->get<bool>();
        } else {
            r.schema.push_back(join(p, "independent") + ": expected a boolean");
        }
    }
    s.choice_draws = r.count(j, "choice_draws", p, s.choice_draws);
    s.n_draws = r.count(j, "n_draws", p, s.n_draws);
    if (s.choice_draws == 0) r.invariant.push_back(join(p, "choice_draws") + ": must be >= 1");
    if (s.n_draws == 0) r.invariant.push_back(join(p, "n_draws") + ": must be >= 1");
    return s;
}

json distribution_json(const ara::ScalarDistribution& d) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ara::PointMass>) {
                return {{"type", "point"}, {"value", v.value}};
            } else if constexpr (std::is_same_v<T, ara::UniformInterval>) {
                return {{"type", "uniform"}, {"lo", v.lo()}, {"hi", v.hi()}};
            } else if constexpr (std::is_same_v<T, ara::PowerPricePrior>) {
                return {{"type", "power"},
                        {"lower", v.lower()},
                        {"upper", v.upper()},
                        {"exponent", v.exponent()}};
            } else if constexpr (std::is_same_v<T, ara::CategoricalPMF>) {
                return {{"type", "categorical"}, {"values", v.values()}, {"probs", v.probs()}};
            } else {
                return {{"type", "empirical"}, {"samples", v.samples()}};
            }
        },
        d);
}

json grid_json(const ara::PriceGrid& g) {
    return {{"min", g.min()}, {"max", g.max()}, {"step", g.step()}};
}

json pairs_json(const std::vector<std::pair<double, double>>& v) {
    json out = json::array();
    for (const auto& [x, y] : v) out.push_back({x, y});
    return out;
}

json params_json(const ara::retail::RetailScenario& s) {
    json j = {{"v1", s.v1},
              {"v2", s.v2},
              {"p1_hat", s.p1_hat},
              {"p2_hat", s.p2_hat},
              {"alpha", {{"shape", s.alpha.shape()}, {"scale", s.alpha.scale()}}},
              {"beta", {{"shape", s.beta.shape()}, {"scale", s.beta.scale()}}},
              {"prior_exponent", s.prior_exponent},
              {"grid_step", s.grid_step},
              {"n1", s.n1},
              {"n2", s.n2},
              {"utility", s.utility == ara::retail::UtilityVariant::Perishable ? "perishable"
                                                                               : "non-perishable"}};
    if (s.fixed_sigma) j["fixed_sigma"] = *s.fixed_sigma;
    if (s.known_p2) j["known_p2"] = *s.known_p2;
    return j;
}

json params_json(const ara::pension::PensionScenario& s) {
    json offers = json::object();
    for (const auto& [cls, pmf] : s.competitor_offers) {
        offers[ara::pension::to_string(cls)] = {{"values", pmf.values()}, {"probs", pmf.probs()}};
    }
    json j = {{"capital", s.capital},
              {"earn_rate", s.earn_rate},
              {"offer_grid", grid_json(s.offer_grid)},
              {"horizon", s.horizon},
              {"penalty_fraction", s.penalty_fraction},
              {"exit_profile", s.exit_profile.q_exit},
              {"competitor_offers", offers},
              {"score_class", ara::pension::to_string(s.score_class)},
              {"n_competitors", s.n_competitors},
              {"rho_interval", {s.rho_lo, s.rho_hi}},
              {"money_unit", s.money_unit},
              {"mc_draws", s.mc_draws},
              {"rho_sharing",
               s.rho_sharing == ara::pension::RhoSharing::Shared ? "shared" : "per-entity"}};
    if (!s.g_table.empty()) j["g_table"] = pairs_json(s.g_table);
    return j;
}

json params_json(const TemplateScenario& s) {
    json customer = {{"family", family_name(s.customer_family)},
                     {"parameter", distribution_json(s.customer_parameter)},
                     {"payoff", s.customer_payoff},
                     {"sharing", s.customer_sharing == ara::ParameterSharing::Shared
                                     ? "shared"
                                     : "per-product"}};
    if (!s.customer_table.empty()) customer["table"] = pairs_json(s.customer_table);
    json competitors = json::array();
    for (const auto& c : s.competitors) competitors.push_back(distribution_json(c));
    json j = {{"grid", grid_json(s.grid)},
              {"producer_cost", s.producer_cost},
              {"customer", customer},
              {"competitors", competitors},
              {"independent", s.independent},
              {"choice_draws", s.choice_draws},
              {"n_draws", s.n_draws}};
    if (s.outcomes) j["outcomes"] = {{"values", s.outcomes->values}, {"probs", s.outcomes->probs}};
    return j;
}

}  // namespace

bool operator==(const TemplateScenario& a, const TemplateScenario& b) {
    auto same_outcomes = [](const std::optional<ara::DiscreteOutcome>& x,
                            const std::optional<ara::DiscreteOutcome>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || (x->values == y->values && x->probs == y->probs);
    };
    return a.grid == b.grid && a.producer_cost == b.producer_cost &&
           a.customer_family == b.customer_family &&
           a.customer_parameter == b.customer_parameter &&
           a.customer_payoff == b.customer_payoff && a.customer_sharing == b.customer_sharing &&
           a.customer_table == b.customer_table && same_outcomes(a.outcomes, b.outcomes) &&
           a.competitors == b.competitors && a.independent == b.independent &&
           a.choice_draws == b.choice_draws && a.n_draws == b.n_draws;
}

ara::RandomUtilitySpec TemplateScenario::customer_spec() const {
    ara::RandomUtilitySpec spec;
    spec.family = customer_family;
    spec.parameter = customer_parameter;
    spec.payoff = customer_payoff == "price"   ? ara::payoff::price()
                  : customer_payoff == "value" ? ara::payoff::value()
                                               : ara::payoff::value_minus_price();
    spec.table = customer_table;
    spec.sharing = customer_sharing;
    return spec;
}

ara::RandomUtilitySpec TemplateScenario::producer_spec() const {
    ara::RandomUtilitySpec spec;
    spec.family = ara::UtilityFamily::RiskNeutral;
    spec.parameter = ara::PointMass{producer_cost};
    spec.payoff = ara::payoff::price();
    return spec;
}

ara::OutcomeModel TemplateScenario::outcome_model() const {
    return outcomes ? ara::OutcomeModel({*outcomes}) : ara::OutcomeModel::none();
}

ara::AgentBeliefs TemplateScenario::beliefs() const {
    return ara::AgentBeliefs{competitors, independent};
}

ScenarioError::ScenarioError(ExitCode code, std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg;
          for (const auto& p : problems) msg += p + "\n";
          return msg;
      }()),
      code_(code),
      problems_(std::move(problems)) {}

std::string to_string(Kind k) {
    switch (k) {
        case Kind::Retail:
            return "retail";
        case Kind::Pension:
            return "pension";
        case Kind::Template:
            return "template";
    }
    return "retail";
}

ScenarioFile parse_scenario(const json& doc) {
    Reader r;
    ScenarioFile file;
    if (!r.object(doc, "", {"kind", "params", "seed", "output", "format", "batch"})) {
        throw ScenarioError(kSchemaError, {"scenario: expected a JSON object"});
    }
    const auto kind = r.text(doc, "kind", "");
    file.seed = r.count(doc, "seed", "", 0);
    file.output = r.text(doc, "output", "", file.output);
    const auto format = r.text(doc, "format", "", "csv");
    if (format == "json") {
        file.format = Format::Json;
    } else if (format != "csv") {
        r.schema.push_back("format: expected 'csv' or 'json'");
    }

    const json* params = r.field(doc, "params", "", true);
    if (kind == "retail") {
        file.kind = Kind::Retail;
        if (params) file.params = read_retail(r, *params, "params");
    } else if (kind == "pension") {
        file.kind = Kind::Pension;
        if (params) file.params = read_pension(r, *params, "params");
    } else if (kind == "template") {
        file.kind = Kind::Template;
        if (params) file.params = read_template(r, *params, "params");
    } else if (!kind.empty()) {
        r.schema.push_back("kind: expected 'retail', 'pension' or 'template'");
    }

    if (const json* batch = r.field(doc, "batch", "", false)) {
        if (file.kind != Kind::Pension) {
            r.schema.push_back("batch: only pension scenarios support batches");
        } else if (r.object(*batch, "batch", {"n_competitors"})) {
            for (double n : r.numbers(*batch, "n_competitors", "batch")) {
                if (n != std::floor(n)) {
                    r.schema.push_back("batch.n_competitors: expected integers");
                } else if (n < 1) {
                    r.invariant.push_back("batch.n_competitors: each count must be >= 1");
                } else {
                    file.batch_competitors.push_back(static_cast<int>(n));
                }
            }
        }
    }

    if (!r.schema.empty()) throw ScenarioError(kSchemaError, r.schema);
    if (!r.invariant.empty()) throw ScenarioError(kInvariantError, r.invariant);
    return file;
}

ScenarioFile parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(kSchemaError, {std::string("malformed JSON: ") + e.what()});
    }
    return parse_scenario(doc);
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(kMissingFile, {"cannot open scenario file: " + path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

json to_json(const ScenarioFile& file) {
    json j = {{"kind", to_string(file.kind)},
              {"seed", file.seed},
              {"output", file.output},
              {"format", file.format == Format::Json ? "json" : "csv"}};
    j["params"] = std::visit([](const auto& p) { return params_json(p); }, file.params);
    if (!file.batch_competitors.empty()) {
        j["batch"] = {{"n_competitors", file.batch_competitors}};
    }
    return j;
}

}  // namespace price
