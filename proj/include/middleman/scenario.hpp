/**
 * @file scenario.hpp
 * @brief JSON scenario documents: parsing with validation, and emission.
 *
 * Schema (version 1):
 * @code{.json}
 * {
 *   "schema_version": 1,
 *   "game": {
 *     "tag": "benchmark",                       // or "externality"; default benchmark
 *     "f1": {"family": "linear", "w1": 0.5, "w2": 0.5},
 *     "f2": {"family": "cobb_douglas", "alpha": 1, "beta": 1, "scale": 1},
 *     "income": {"family": "multiplicative", "activity": {"family": "constant", "value": 1}}
 *   },
 *   "beliefs": {"lambda": 0, "gamma": 0.5, "loyalty": [0.5, 0.5]},
 *   "grid": {"steps": 100, "eps": 1e-9, "participation_lower": 0},
 *   "outputs": ["verdict", "region_csv", "svg"]
 * }
 * @endcode
 * Benefit families: cobb_douglas, linear, constant, tabulated
 * ({"resolution": [rows, cols], "values": [...]}, row-major over s1 then s2).
 * Income families: multiplicative, additive_fees, tabulated
 * ({"resolution": [4 ints], "fee_bounds": [b1, b2], "values": [...]}).
 * Unknown fields are rejected.
 */
#ifndef MIDDLEMAN_SCENARIO_HPP
#define MIDDLEMAN_SCENARIO_HPP

#include <cstddef>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "ambiguity.hpp"
#include "hedonic.hpp"

namespace middleman {

inline constexpr int current_schema_version = 1;

/// Parse or validation failure. Validation errors name exactly one field.
class ScenarioError : public std::runtime_error {
public:
    enum class Kind { parse, validation };

    static ScenarioError parse_failure(std::size_t line, std::size_t column, const std::string& detail) {
        return ScenarioError(Kind::parse, "", line, column,
                             "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                 detail);
    }

    static ScenarioError invalid(const std::string& field, const std::string& detail) {
        return ScenarioError(Kind::validation, field, 0, 0, "validation error: " + field + ": " + detail);
    }

    Kind kind() const noexcept { return kind_; }
    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ScenarioError(Kind kind, std::string field, std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(message), kind_(kind), field_(std::move(field)), line_(line), column_(column) {}

    Kind kind_;
    std::string field_;
    std::size_t line_;
    std::size_t column_;
};

struct OutputRequest {
    bool verdict = true;
    bool region_csv = false;
    bool svg = false;
    friend bool operator==(const OutputRequest&, const OutputRequest&) = default;
};

struct ScenarioConfig {
    int schema_version = current_schema_version;
    HedonicGame game;
    BeliefSystem beliefs;
    int steps = 100;
    double eps = analytic_eps;
    double participation_lower = 0.0;
    OutputRequest outputs;

    /// Oracle grid implied by the scenario, optionally with a different resolution.
    Grid grid(int steps_override = 0) const {
        return default_grid(game, steps_override > 0 ? steps_override : steps, participation_lower);
    }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

using nlohmann::json;

// Reads one JSON object, tracking consumed keys so leftovers can be rejected.
class ObjectReader {
public:
    ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object())
            throw ScenarioError::invalid(path_, "expected an object");
    }

    const json* optional(const std::string& key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    const json& required(const std::string& key, const std::string& what) {
        const json* v = optional(key);
        if (!v)
            throw ScenarioError::invalid(field(key), "missing " + what);
        return *v;
    }

    double number(const std::string& key, const std::string& what) { return as_number(required(key, what), field(key)); }

    double number_or(const std::string& key, double fallback) {
        const json* v = optional(key);
        return v ? as_number(*v, field(key)) : fallback;
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it)
            if (!seen_.contains(it.key()))
                throw ScenarioError::invalid(field(it.key()), "unknown field");
    }

    static double as_number(const json& v, const std::string& field) {
        if (!v.is_number())
            throw ScenarioError::invalid(field, "expected a number");
        return v.get<double>();
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

inline std::vector<double> number_array(const json& v, const std::string& field) {
    if (!v.is_array())
        throw ScenarioError::invalid(field, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(ObjectReader::as_number(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<std::size_t> size_array(const json& v, const std::string& field, std::size_t expected) {
    if (!v.is_array() || v.size() != expected)
        throw ScenarioError::invalid(field, "expected an array of " + std::to_string(expected) + " integers");
    std::vector<std::size_t> out;
    for (const auto& x : v) {
        if (!x.is_number_integer() || x.get<long long>() < 2)
            throw ScenarioError::invalid(field, "axis resolutions must be integers >= 2");
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

inline std::string family_name(ObjectReader& r) {
    const json& f = r.required("family", "family");
    if (!f.is_string())
        throw ScenarioError::invalid(r.field("family"), "expected a string");
    return f.get<std::string>();
}

inline BenefitSpec parse_benefit(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const std::string family = family_name(r);
    BenefitSpec spec;
    if (family == "cobb_douglas") {
        const double alpha = r.number("alpha", "Cobb-Douglas exponent alpha");
        const double beta = r.number("beta", "Cobb-Douglas exponent beta");
        const double scale = r.number_or("scale", 1.0);
        if (!(alpha > 0.0))
            throw ScenarioError::invalid(r.field("alpha"), "exponent must be positive");
        if (!(beta > 0.0))
            throw ScenarioError::invalid(r.field("beta"), "exponent must be positive");
        if (!(scale > 0.0))
            throw ScenarioError::invalid(r.field("scale"), "scale must be positive");
        spec = BenefitSpec::cobb_douglas(alpha, beta, scale);
    } else if (family == "linear") {
        const double w1 = r.number("w1", "linear weight w1");
        const double w2 = r.number("w2", "linear weight w2");
        if (!(w1 >= 0.0))
            throw ScenarioError::invalid(r.field("w1"), "weight must be nonnegative");
        if (!(w2 >= 0.0))
            throw ScenarioError::invalid(r.field("w2"), "weight must be nonnegative");
        spec = BenefitSpec::linear(w1, w2);
    } else if (family == "constant") {
        const double value = r.number("value", "constant value");
        if (!(value >= 0.0))
            throw ScenarioError::invalid(r.field("value"), "value must be nonnegative");
        spec = BenefitSpec::constant(value);
    } else if (family == "tabulated") {
        const auto res = size_array(r.required("resolution", "axis resolutions"), r.field("resolution"), 2);
        auto values = number_array(r.required("values", "tabulated values"), r.field("values"));
        if (values.size() != res[0] * res[1])
            throw ScenarioError::invalid(r.field("values"), "expected " + std::to_string(res[0] * res[1]) + " values");
        for (double v : values)
            if (!(v >= 0.0))
                throw ScenarioError::invalid(r.field("values"), "values must be nonnegative");
        spec = BenefitSpec::tabulated(res[0], res[1], std::move(values));
    } else {
        throw ScenarioError::invalid(r.field("family"), "unknown benefit family '" + family + "'");
    }
    r.finish();
    return spec;
}

inline IncomeSpec parse_income(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const std::string family = family_name(r);
    IncomeSpec spec;
    if (family == "multiplicative") {
        spec = IncomeSpec::multiplicative(parse_benefit(r.required("activity", "activity function"), r.field("activity")));
    } else if (family == "additive_fees") {
        spec = IncomeSpec::additive_fees();
    } else if (family == "tabulated") {
        const auto res = size_array(r.required("resolution", "axis resolutions"), r.field("resolution"), 4);
        const auto bounds = number_array(r.required("fee_bounds", "fee bounds"), r.field("fee_bounds"));
        if (bounds.size() != 2 || !(bounds[0] > 0.0) || !(bounds[1] > 0.0))
            throw ScenarioError::invalid(r.field("fee_bounds"), "expected two positive fee bounds");
        auto values = number_array(r.required("values", "tabulated values"), r.field("values"));
        const std::size_t total = res[0] * res[1] * res[2] * res[3];
        if (values.size() != total)
            throw ScenarioError::invalid(r.field("values"), "expected " + std::to_string(total) + " values");
        for (double v : values)
            if (!(v >= 0.0))
                throw ScenarioError::invalid(r.field("values"), "values must be nonnegative");
        spec = IncomeSpec::tabulated({res[0], res[1], res[2], res[3]}, {bounds[0], bounds[1]}, std::move(values));
    } else {
        throw ScenarioError::invalid(r.field("family"), "unknown income family '" + family + "'");
    }
    r.finish();
    return spec;
}

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline bool unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

inline json benefit_to_json(const BenefitSpec& f) {
    return std::visit(
        [](const auto& fam) -> json {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, CobbDouglas>)
                return {{"family", "cobb_douglas"}, {"alpha", fam.alpha}, {"beta", fam.beta}, {"scale", fam.scale}};
            else if constexpr (std::is_same_v<T, Linear>)
                return {{"family", "linear"}, {"w1", fam.w1}, {"w2", fam.w2}};
            else if constexpr (std::is_same_v<T, Constant>)
                return {{"family", "constant"}, {"value", fam.value}};
            else
                return {{"family", "tabulated"}, {"resolution", {fam.rows, fam.cols}}, {"values", fam.values}};
        },
        f.family());
}

inline json income_to_json(const IncomeSpec& income) {
    return std::visit(
        [](const auto& fam) -> json {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, Multiplicative>)
                return {{"family", "multiplicative"}, {"activity", benefit_to_json(fam.activity)}};
            else if constexpr (std::is_same_v<T, AdditiveFees>)
                return {{"family", "additive_fees"}};
            else
                return {{"family", "tabulated"},
                        {"resolution", fam.resolution},
                        {"fee_bounds", fam.fee_bounds},
                        {"values", fam.values}};
        },
        income.family());
}

} // namespace detail

/**
 * @brief Parses and fully validates a scenario document.
 *
 * Defaults are filled in explicitly: steps = 100, lambda = 0, gamma = 0,
 * loyalty = (0, 0), participation_lower = 0, outputs = ["verdict"], and eps =
 * 1e-9 for analytic games (grid Lipschitz slack when tabulated data is present).
 */
inline ScenarioConfig parse_scenario(std::string_view text) {
    using detail::json;

    json doc;
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        doc = json::object();
    } else {
        try {
            doc = json::parse(text.begin(), text.end());
        } catch (const json::parse_error& e) {
            const auto [line, column] = detail::line_and_column(text, e.byte);
            std::string detail = e.what();
            if (auto pos = detail.find("parse error"); pos != std::string::npos) {
                if (auto colon = detail.find(": ", pos); colon != std::string::npos)
                    detail = detail.substr(colon + 2);
            }
            throw ScenarioError::parse_failure(line, column, detail);
        }
    }

    detail::ObjectReader root(doc, "");
    ScenarioConfig cfg;

    if (const json* v = root.optional("schema_version")) {
        if (!v->is_number_integer())
            throw ScenarioError::invalid("schema_version", "expected an integer");
        cfg.schema_version = v->get<int>();
    }
    if (cfg.schema_version != current_schema_version)
        throw ScenarioError::invalid("schema_version", "unsupported version " + std::to_string(cfg.schema_version) +
                                                           " (expected " + std::to_string(current_schema_version) + ")");

    const json* game_node = root.optional("game");
    if (!game_node)
        throw ScenarioError::invalid("game", "missing game");
    {
        detail::ObjectReader g(*game_node, "game");
        if (const json* tag = g.optional("tag")) {
            if (*tag == "benchmark")
                cfg.game.tag = GameTag::benchmark;
            else if (*tag == "externality")
                cfg.game.tag = GameTag::externality;
            else
                throw ScenarioError::invalid("game.tag", "expected \"benchmark\" or \"externality\"");
        }
        cfg.game.f1 = detail::parse_benefit(g.required("f1", "benefit function f1"), "game.f1");
        cfg.game.f2 = detail::parse_benefit(g.required("f2", "benefit function f2"), "game.f2");
        cfg.game.income = detail::parse_income(g.required("income", "income function"), "game.income");
        g.finish();
    }

    if (const json* b = root.optional("beliefs")) {
        detail::ObjectReader r(*b, "beliefs");
        cfg.beliefs.lambda = r.number_or("lambda", 0.0);
        cfg.beliefs.gamma = r.number_or("gamma", 0.0);
        if (const json* loyalty = r.optional("loyalty")) {
            const auto levels = detail::number_array(*loyalty, "beliefs.loyalty");
            if (levels.size() != 2)
                throw ScenarioError::invalid("beliefs.loyalty", "expected two loyalty levels");
            cfg.beliefs.loyalty1 = levels[0];
            cfg.beliefs.loyalty2 = levels[1];
        }
        r.finish();
        if (!detail::unit_interval(cfg.beliefs.lambda))
            throw ScenarioError::invalid("beliefs.lambda", "degree of optimism must lie in [0,1]");
        if (!detail::unit_interval(cfg.beliefs.gamma))
            throw ScenarioError::invalid("beliefs.gamma", "degree of pessimism must lie in [0,1]");
        if (!detail::unit_interval(cfg.beliefs.loyalty1) || !detail::unit_interval(cfg.beliefs.loyalty2))
            throw ScenarioError::invalid("beliefs.loyalty", "loyalty levels must lie in [0,1]");
        if (cfg.beliefs.lambda + cfg.beliefs.gamma > 1.0) {
            std::ostringstream os;
            os << "properness violated (lambda + gamma = " << cfg.beliefs.lambda + cfg.beliefs.gamma << " > 1)";
            throw ScenarioError::invalid("beliefs", os.str());
        }
    }

    bool eps_given = false;
    if (const json* gr = root.optional("grid")) {
        detail::ObjectReader r(*gr, "grid");
        if (const json* steps = r.optional("steps")) {
            if (!steps->is_number_integer())
                throw ScenarioError::invalid("grid.steps", "expected an integer");
            if (steps->get<long long>() < 2 || steps->get<long long>() > 100000)
                throw ScenarioError::invalid("grid.steps", "steps must lie in [2, 100000]");
            cfg.steps = steps->get<int>();
        }
        if (const json* eps = r.optional("eps")) {
            cfg.eps = detail::ObjectReader::as_number(*eps, "grid.eps");
            if (!(cfg.eps >= 0.0))
                throw ScenarioError::invalid("grid.eps", "tolerance must be nonnegative");
            eps_given = true;
        }
        cfg.participation_lower = r.number_or("participation_lower", 0.0);
        if (!(cfg.participation_lower >= 0.0 && cfg.participation_lower < 1.0))
            throw ScenarioError::invalid("grid.participation_lower", "must lie in [0,1)");
        r.finish();
    }

    if (const json* out = root.optional("outputs")) {
        if (!out->is_array())
            throw ScenarioError::invalid("outputs", "expected an array of artifact names");
        cfg.outputs = OutputRequest{false, false, false};
        for (const auto& item : *out) {
            if (item == "verdict")
                cfg.outputs.verdict = true;
            else if (item == "region_csv")
                cfg.outputs.region_csv = true;
            else if (item == "svg")
                cfg.outputs.svg = true;
            else
                throw ScenarioError::invalid("outputs", "unknown artifact " + item.dump());
        }
    }
    root.finish();

    const Grid grid = cfg.grid();
    if (cfg.game.tag == GameTag::benchmark) {
        if (!axiom1_check(cfg.game.f1, grid))
            throw ScenarioError::invalid("game.f1", "benchmark benefit function is not strictly increasing on the working grid");
        if (!axiom1_check(cfg.game.f2, grid))
            throw ScenarioError::invalid("game.f2", "benchmark benefit function is not strictly increasing on the working grid");
    }
    if (!eps_given)
        cfg.eps = default_eps(cfg.game, grid);
    return cfg;
}

/// Serializes a config; parse_scenario(emit_scenario(c)) == c.
inline std::string emit_scenario(const ScenarioConfig& cfg) {
    using detail::json;
    json outputs = json::array();
    if (cfg.outputs.verdict)
        outputs.push_back("verdict");
    if (cfg.outputs.region_csv)
        outputs.push_back("region_csv");
    if (cfg.outputs.svg)
        outputs.push_back("svg");
    json doc = {
        {"schema_version", cfg.schema_version},
        {"game",
         {{"tag", to_string(cfg.game.tag)},
          {"f1", detail::benefit_to_json(cfg.game.f1)},
          {"f2", detail::benefit_to_json(cfg.game.f2)},
          {"income", detail::income_to_json(cfg.game.income)}}},
        {"beliefs",
         {{"lambda", cfg.beliefs.lambda}, {"gamma", cfg.beliefs.gamma}, {"loyalty", {cfg.beliefs.loyalty1, cfg.beliefs.loyalty2}}}},
        {"grid", {{"steps", cfg.steps}, {"eps", cfg.eps}, {"participation_lower", cfg.participation_lower}}},
        {"outputs", outputs},
    };
    return doc.dump(2) + "\n";
}

} // namespace middleman

#endif // MIDDLEMAN_SCENARIO_HPP
