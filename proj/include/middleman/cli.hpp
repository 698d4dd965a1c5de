/**
 * @file cli.hpp
 * @brief Command-line driver. `run` is what the `middleman` executable calls;
 *        it is a plain function so tests can drive it in-process.
 *
 * Exit status: 0 on success, 1 when `--assert` is given and the verdict is
 * false, 2 on usage, validation or I/O errors.
 */
#ifndef MIDDLEMAN_CLI_HPP
#define MIDDLEMAN_CLI_HPP

#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "activity.hpp"
#include "ambiguity.hpp"
#include "game.hpp"
#include "hedonic.hpp"
#include "report.hpp"
#include "scenario.hpp"

namespace middleman::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verdict_false = 1;
inline constexpr int exit_usage = 2;

/// Raised for malformed flag values; reported with exit status 2.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SweepAxis {
    std::string field;
    std::vector<double> values;
};

inline const std::vector<std::string>& sweep_fields() {
    static const std::vector<std::string> fields{"lambda", "gamma", "loyalty1", "loyalty2", "loyalty"};
    return fields;
}

inline double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw usage_error(what + ": trailing characters in '" + text + "'");
        return v;
    } catch (const std::logic_error&) {
        throw usage_error(what + ": not a number: '" + text + "'");
    }
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(text);
    while (std::getline(is, part, sep))
        parts.push_back(part);
    if (!text.empty() && text.back() == sep)
        parts.emplace_back();
    return parts;
}

/// `field=start:stop:count`, count evenly spaced values including both ends.
inline SweepAxis parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw usage_error("--sweep expects field=start:stop:count, got '" + spec + "'");
    SweepAxis axis{spec.substr(0, eq), {}};
    if (std::find(sweep_fields().begin(), sweep_fields().end(), axis.field) == sweep_fields().end())
        throw usage_error("--sweep: unknown field '" + axis.field + "'");
    const auto parts = split(spec.substr(eq + 1), ':');
    if (parts.size() != 3)
        throw usage_error("--sweep expects field=start:stop:count, got '" + spec + "'");
    const double start = parse_double(parts[0], "--sweep start");
    const double stop = parse_double(parts[1], "--sweep stop");
    int count = 0;
    try {
        std::size_t used = 0;
        count = std::stoi(parts[2], &used);
        if (used != parts[2].size())
            count = 0;
    } catch (const std::logic_error&) {
        count = 0;
    }
    if (count < 1)
        throw usage_error("--sweep count must be a positive integer, got '" + parts[2] + "'");
    for (int k = 0; k < count; ++k)
        axis.values.push_back(count == 1 ? start : (k == count - 1 ? stop : start + (stop - start) * k / (count - 1)));
    return axis;
}

inline StrategyProfile parse_profile(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4)
        throw usage_error("--profile expects s1,s2,rho1,rho2");
    StrategyProfile p{parse_double(parts[0], "--profile s1"), parse_double(parts[1], "--profile s2"),
                      parse_double(parts[2], "--profile rho1"), parse_double(parts[3], "--profile rho2")};
    if (!in_strategy_box(p))
        throw usage_error("--profile outside the strategy box (participation in [0,1], fees >= 0)");
    return p;
}

inline ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw usage_error("cannot read scenario file " + path);
    const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

namespace detail {

struct Options {
    std::string scenario;
    std::string profile;
    std::string out;
    std::string format = "text";
    int steps = 0;
    std::optional<double> eps;
    int resolution = 100;
    bool assert_verdict = false;
    std::vector<std::string> sweeps;
    int player = 0;
    double candidate = 1.0;
};

inline void apply_sweep_value(BeliefSystem& beliefs, const std::string& field, double v) {
    if (field == "lambda")
        beliefs.lambda = v;
    else if (field == "gamma")
        beliefs.gamma = v;
    else if (field == "loyalty1")
        beliefs.loyalty1 = v;
    else if (field == "loyalty2")
        beliefs.loyalty2 = v;
    else
        beliefs.loyalty1 = beliefs.loyalty2 = v;
}

struct Context {
    const Options& opts;
    std::ostream& out;

    bool machine() const { return opts.format == "machine"; }

    double eps(const ScenarioConfig& cfg) const {
        if (opts.eps) {
            if (!(*opts.eps >= 0.0))
                throw usage_error("--eps must be nonnegative");
            return *opts.eps;
        }
        return cfg.eps;
    }

    StrategyProfile profile_or_full_extraction(const ScenarioConfig& cfg) const {
        if (!opts.profile.empty())
            return parse_profile(opts.profile);
        const FeePair full = full_extraction_fees(cfg.game);
        return {1.0, 1.0, full.rho1, full.rho2};
    }

    int emit(const Report& report, bool verdict) const {
        const std::string doc = report.render(machine());
        out << doc;
        if (!opts.out.empty())
            write_output(opts.out, doc);
        return opts.assert_verdict && !verdict ? exit_verdict_false : exit_ok;
    }
};

inline std::vector<double> profile_values(const StrategyProfile& p) { return {p.s1, p.s2, p.rho1, p.rho2}; }

inline int verify_nash(const Context& ctx) {
    const auto cfg = load_scenario(ctx.opts.scenario);
    const Grid grid = cfg.grid(ctx.opts.steps);
    const double eps = ctx.eps(cfg);
    const StrategyProfile profile = ctx.profile_or_full_extraction(cfg);
    const auto payoffs = payoff_vector(cfg.game, profile);
    const bool nash = epsilon_nash_check(cfg.game, profile, grid, eps);
    Report r;
    r.add("profile", profile_values(profile))
        .add("steps", grid.steps)
        .add("eps", eps)
        .add("payoffs", std::vector<double>(payoffs.begin(), payoffs.end()))
        .add("nash_equilibrium", nash);
    return ctx.emit(r, nash);
}

inline int dominance(const Context& ctx) {
    const auto cfg = load_scenario(ctx.opts.scenario);
    const Grid grid = cfg.grid(ctx.opts.steps);
    const double eps = ctx.eps(cfg);
    if (ctx.opts.player != 0 && ctx.opts.player != 1 && ctx.opts.player != 2)
        throw usage_error("--player must be 1 or 2");
    if (!(ctx.opts.candidate >= 0.0 && ctx.opts.candidate <= 1.0))
        throw usage_error("--candidate must lie in [0,1]");
    Report r;
    r.add("candidate", ctx.opts.candidate).add("steps", grid.steps).add("eps", eps);
    bool all = true;
    for (Player user : {Player::user1, Player::user2}) {
        if (ctx.opts.player != 0 && ctx.opts.player != (user == Player::user1 ? 1 : 2))
            continue;
        const bool dominant = weak_dominance_check(cfg.game, user, ctx.opts.candidate, grid, eps);
        r.add(std::string(to_string(user)) + "_weakly_dominant", dominant);
        all = all && dominant;
    }
    r.add("weakly_dominant", all);
    return ctx.emit(r, all);
}

inline int pareto(const Context& ctx) {
    const auto cfg = load_scenario(ctx.opts.scenario);
    const Grid grid = cfg.grid(ctx.opts.steps);
    const double eps = ctx.eps(cfg);
    const StrategyProfile profile = ctx.profile_or_full_extraction(cfg);
    const auto payoffs = payoff_vector(cfg.game, profile);
    const bool efficient = pareto_check(cfg.game, profile, grid, eps);
    Report r;
    r.add("profile", profile_values(profile))
        .add("steps", grid.steps)
        .add("eps", eps)
        .add("payoffs", std::vector<double>(payoffs.begin(), payoffs.end()))
        .add("pareto_efficient", efficient);
    return ctx.emit(r, efficient);
}

inline int ambiguity_eq(const Context& ctx) {
    const auto cfg = load_scenario(ctx.opts.scenario);
    const Grid grid = cfg.grid(ctx.opts.steps);
    const double eps = ctx.eps(cfg);
    const StrategyProfile profile = ctx.profile_or_full_extraction(cfg);
    const bool equilibrium = ambiguity_equilibrium_check(cfg.game, cfg.beliefs, profile, grid, eps);
    const FeeScan scan = contestation_fee_scan(cfg.game, cfg.beliefs, grid, eps);
    Report r;
    r.add("profile", profile_values(profile))
        .add("lambda", cfg.beliefs.lambda)
        .add("gamma", cfg.beliefs.gamma)
        .add("loyalty", FeePair{cfg.beliefs.loyalty1, cfg.beliefs.loyalty2})
        .add("steps", grid.steps)
        .add("eps", eps)
        .add("modified_payoff", modified_payoff(cfg.game, cfg.beliefs, profile))
        .add("value_at_F", scan.value_at_full)
        .add("value_at_phi", scan.value_at_loyalty)
        .add("best_grid_fee", scan.best_fee)
        .add("best_grid_value", scan.best_value)
        .add("third_fee_wins", scan.third_fee_wins)
        .add("ambiguity_equilibrium", equilibrium);
    return ctx.emit(r, equilibrium);
}

inline int threshold(const Context& ctx) {
    const auto cfg = load_scenario(ctx.opts.scenario);
    const ContestationVerdict v = theorem2_verdict(cfg.game, cfg.beliefs);
    Report r = verdict_report(cfg.beliefs, v);
    if (cfg.game.income.is_multiplicative())
        r.add("corollary1", to_string(corollary1_condition(cfg.game, cfg.beliefs)));
    return ctx.emit(r, v.full_exploitation);
}

inline int region(const Context& ctx) {
    const auto samples = region_sample(ctx.opts.resolution);
    std::string doc;
    if (ctx.opts.format == "svg")
        doc = region_svg(samples, ctx.opts.resolution);
    else if (ctx.opts.format == "csv" || ctx.opts.format == "text")
        doc = region_csv(samples);
    else
        throw usage_error("region supports --format csv or svg");
    if (ctx.opts.out.empty()) {
        ctx.out << doc;
        return exit_ok;
    }
    write_output(ctx.opts.out, doc);
    Report r;
    r.add("resolution", ctx.opts.resolution)
        .add("samples", static_cast<long long>(samples.size()))
        .add("shaded_fraction", shaded_fraction(samples))
        .add("out", ctx.opts.out.c_str());
    ctx.out << r.text();
    return exit_ok;
}

inline int sweep(const Context& ctx) {
    const auto cfg = load_scenario(ctx.opts.scenario);
    if (ctx.opts.sweeps.empty())
        throw usage_error("sweep needs at least one --sweep field=start:stop:count");
    std::vector<SweepAxis> axes;
    for (const auto& s : ctx.opts.sweeps)
        axes.push_back(parse_sweep(s));

    std::size_t total = 1;
    for (const auto& a : axes)
        total *= a.values.size();

    struct Row {
        std::vector<double> coords;
        ContestationVerdict verdict;
    };
    std::vector<Row> rows(total);
    // First axis varies slowest.
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        rows[i].coords.resize(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            rows[i].coords[a] = axes[a].values[rem % axes[a].values.size()];
            rem /= axes[a].values.size();
        }
    }
    for (auto& row : rows) {
        BeliefSystem b = cfg.beliefs;
        for (std::size_t a = 0; a < axes.size(); ++a)
            apply_sweep_value(b, axes[a].field, row.coords[a]);
        if (!b.is_proper() || !(b.gamma < 1.0) || !(b.loyalty1 < 1.0) || !(b.loyalty2 < 1.0)) {
            std::string where;
            for (std::size_t a = 0; a < axes.size(); ++a)
                where += (a ? " " : "") + axes[a].field + "=" + format_number(row.coords[a]);
            throw usage_error("sweep point outside the threshold domain (" + where +
                              "): need lambda + gamma <= 1, gamma < 1, loyalty < 1");
        }
        row.verdict = theorem2_verdict(cfg.game, b);
    }

    // Single-axis sweeps report where the verdict flips.
    std::vector<std::pair<double, double>> transitions;
    if (axes.size() == 1)
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].verdict.full_exploitation != rows[i - 1].verdict.full_exploitation)
                transitions.emplace_back(rows[i - 1].coords[0], rows[i].coords[0]);

    std::string doc;
    if (ctx.opts.format == "csv") {
        for (const auto& a : axes)
            doc += a.field + ",";
        doc += "delta,rhs,full_exploitation\n";
        for (const auto& row : rows) {
            for (double c : row.coords)
                doc += format_number(c) + ",";
            doc += format_number(row.verdict.delta) + "," + format_number(row.verdict.rhs) + "," +
                   format_bool(row.verdict.full_exploitation) + "\n";
        }
    } else if (ctx.opts.format == "machine") {
        doc = "{\n  \"rows\": [\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            doc += "    {";
            for (std::size_t a = 0; a < axes.size(); ++a)
                doc += "\"" + axes[a].field + "\": " + format_number(rows[i].coords[a]) + ", ";
            doc += "\"delta\": " + format_number(rows[i].verdict.delta) + ", \"rhs\": " + format_number(rows[i].verdict.rhs) +
                   ", \"full_exploitation\": " + format_bool(rows[i].verdict.full_exploitation) + "}";
            doc += i + 1 < rows.size() ? ",\n" : "\n";
        }
        doc += "  ],\n  \"transitions\": [";
        for (std::size_t i = 0; i < transitions.size(); ++i)
            doc += (i ? ", " : "") + std::string("[") + format_number(transitions[i].first) + ", " +
                   format_number(transitions[i].second) + "]";
        doc += "]\n}\n";
    } else if (ctx.opts.format == "text") {
        for (const auto& row : rows) {
            for (std::size_t a = 0; a < axes.size(); ++a)
                doc += axes[a].field + "=" + format_number(row.coords[a]) + " ";
            doc += "delta=" + format_number(row.verdict.delta) + " rhs=" + format_number(row.verdict.rhs) +
                   " full_exploitation=" + format_bool(row.verdict.full_exploitation) + "\n";
        }
        if (axes.size() == 1) {
            doc += "transitions=" + std::to_string(transitions.size()) + "\n";
            for (const auto& [lo, hi] : transitions)
                doc += "transition=" + format_number(lo) + "," + format_number(hi) + "\n";
        }
    } else {
        throw usage_error("sweep supports --format text, machine or csv");
    }
    ctx.out << doc;
    if (!ctx.opts.out.empty())
        write_output(ctx.opts.out, doc);
    return exit_ok;
}

} // namespace detail

/// Runs one subcommand. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equilibrium analysis for the intermediated-interaction (middleman platform) game", "middleman"};
    app.require_subcommand(1, 1);
    detail::Options opts;

    auto scenario = [&](CLI::App* sub) { sub->add_option("--scenario", opts.scenario, "Scenario file (JSON)")->required(); };
    auto oracle_flags = [&](CLI::App* sub, bool with_profile) {
        if (with_profile)
            sub->add_option("--profile", opts.profile, "s1,s2,rho1,rho2 (default: 1,1 and full extraction fees)");
        sub->add_option("--steps", opts.steps, "Grid subdivisions per axis (overrides the scenario)")->check(CLI::Range(2, 100000));
        sub->add_option("--eps", opts.eps, "Improvement tolerance (overrides the scenario)");
    };
    auto report_flags = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember(std::move(formats)));
        sub->add_option("--out", opts.out, "Also write the document to this file");
        sub->add_flag("--assert", opts.assert_verdict, "Exit with status 1 when the verdict is false");
    };

    auto* nash = app.add_subcommand("verify-nash", "Brute-force Nash check of a profile");
    scenario(nash);
    oracle_flags(nash, true);
    report_flags(nash, {"text", "machine"});

    auto* dom = app.add_subcommand("dominance", "Weak dominance of a participation level for the users");
    scenario(dom);
    oracle_flags(dom, false);
    dom->add_option("--player", opts.player, "User 1 or 2 (default: both)");
    dom->add_option("--candidate", opts.candidate, "Candidate participation level (default 1)");
    report_flags(dom, {"text", "machine"});

    auto* par = app.add_subcommand("pareto", "Brute-force Pareto efficiency check of a profile");
    scenario(par);
    oracle_flags(par, true);
    report_flags(par, {"text", "machine"});

    auto* amb = app.add_subcommand("ambiguity-eq", "Equilibrium check with the middleman's neo-additive payoff");
    scenario(amb);
    oracle_flags(amb, true);
    report_flags(amb, {"text", "machine"});

    auto* thr = app.add_subcommand("threshold", "Full-exploitation threshold of a contested middleman");
    scenario(thr);
    report_flags(thr, {"text", "machine"});

    auto* reg = app.add_subcommand("region", "Normalized (gamma, sigma) full-exploitation region");
    reg->add_option("--resolution", opts.resolution, "Lattice subdivisions per axis")->check(CLI::Range(2, 100000));
    reg->add_option("--format", opts.format, "csv or svg")->check(CLI::IsMember({"text", "csv", "svg"}));
    reg->add_option("--out", opts.out, "Output file (default: stdout)");

    auto* swp = app.add_subcommand("sweep", "Threshold verdicts over a Cartesian grid of belief parameters");
    scenario(swp);
    swp->add_option("--sweep", opts.sweeps, "field=start:stop:count; fields: lambda, gamma, loyalty1, loyalty2, loyalty")
        ->required();
    swp->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "machine", "csv"}));
    swp->add_option("--out", opts.out, "Also write the document to this file");

    std::vector<std::string> argv_storage{"middleman"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    const detail::Context ctx{opts, out};
    try {
        if (nash->parsed())
            return detail::verify_nash(ctx);
        if (dom->parsed())
            return detail::dominance(ctx);
        if (par->parsed())
            return detail::pareto(ctx);
        if (amb->parsed())
            return detail::ambiguity_eq(ctx);
        if (thr->parsed())
            return detail::threshold(ctx);
        if (reg->parsed())
            return detail::region(ctx);
        return detail::sweep(ctx);
    } catch (const ScenarioError& e) {
        err << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_usage;
}

} // namespace middleman::cli

#endif // MIDDLEMAN_CLI_HPP
