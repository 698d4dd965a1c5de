/**
 * @file report.hpp
 * @brief Deterministic serialization of verdicts and region samples.
 *
 * Every number is printed with six decimals. Reports render either as
 * `key=value` lines or as a JSON object with the same keys in the same order.
 */
#ifndef MIDDLEMAN_REPORT_HPP
#define MIDDLEMAN_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "activity.hpp"
#include "ambiguity.hpp"
#include "scenario.hpp"

namespace middleman {

inline std::string format_number(double v) {
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000")
        s = "0.000000";
    return s;
}

inline const char* format_bool(bool b) noexcept { return b ? "true" : "false"; }

class Report {
public:
    using Value = std::variant<bool, double, long long, std::string, std::vector<double>>;

    Report& add(std::string key, Value value) {
        entries_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    Report& add(std::string key, bool value) { return add(std::move(key), Value(value)); }
    Report& add(std::string key, double value) { return add(std::move(key), Value(value)); }
    Report& add(std::string key, long long value) { return add(std::move(key), Value(value)); }
    Report& add(std::string key, int value) { return add(std::move(key), Value(static_cast<long long>(value))); }
    Report& add(std::string key, const char* value) { return add(std::move(key), Value(std::string(value))); }
    Report& add(std::string key, FeePair fees) { return add(std::move(key), Value(std::vector<double>{fees.rho1, fees.rho2})); }

    const std::vector<std::pair<std::string, Value>>& entries() const noexcept { return entries_; }

    std::string text() const {
        std::string out;
        for (const auto& [key, value] : entries_)
            out += key + "=" + render(value, false) + "\n";
        return out;
    }

    std::string machine() const {
        std::string out = "{\n";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out += "  \"" + entries_[i].first + "\": " + render(entries_[i].second, true);
            out += i + 1 < entries_.size() ? ",\n" : "\n";
        }
        return out + "}\n";
    }

    std::string render(bool machine_format) const { return machine_format ? machine() : text(); }

private:
    static std::string number(double v, bool json) {
        if (json && !std::isfinite(v))
            return "null";
        return format_number(v);
    }

    static std::string render(const Value& value, bool json) {
        return std::visit(
            [json](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, bool>) {
                    return format_bool(v);
                } else if constexpr (std::is_same_v<T, double>) {
                    return number(v, json);
                } else if constexpr (std::is_same_v<T, long long>) {
                    return std::to_string(v);
                } else if constexpr (std::is_same_v<T, std::string>) {
                    return json ? nlohmann::json(v).dump() : v;
                } else {
                    std::string s = json ? "[" : "";
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        if (i)
                            s += json ? ", " : ",";
                        s += number(v[i], json);
                    }
                    return json ? s + "]" : s;
                }
            },
            value);
    }

    std::vector<std::pair<std::string, Value>> entries_;
};

/// Threshold report: gamma, lambda, loyalty, F, phi, delta, rhs and the verdict.
inline Report verdict_report(const BeliefSystem& beliefs, const ContestationVerdict& v) {
    Report r;
    r.add("gamma", beliefs.gamma)
        .add("lambda", beliefs.lambda)
        .add("loyalty", FeePair{beliefs.loyalty1, beliefs.loyalty2})
        .add("F", v.full_fees)
        .add("phi", v.loyalty_fees)
        .add("delta", v.delta)
        .add("rhs", v.rhs)
        .add("full_exploitation", v.full_exploitation);
    return r;
}

inline std::string region_csv(const std::vector<RegionSample>& samples) {
    std::string out = "gamma,sigma,full_exploitation\n";
    out.reserve(samples.size() * 32);
    for (const auto& s : samples)
        out += format_number(s.point.gamma) + "," + format_number(s.point.sigma) + "," + format_bool(s.full_exploitation) + "\n";
    return out;
}

/// Fraction of lattice samples with full exploitation.
inline double shaded_fraction(const std::vector<RegionSample>& samples) {
    if (samples.empty())
        return 0.0;
    std::size_t shaded = 0;
    for (const auto& s : samples)
        shaded += s.full_exploitation ? 1 : 0;
    return static_cast<double>(shaded) / static_cast<double>(samples.size());
}

/**
 * Region plot with gamma on the horizontal axis and sigma on the vertical
 * axis: one shaded cell per full-exploitation sample plus the boundary curve.
 */
inline std::string region_svg(const std::vector<RegionSample>& samples, int resolution) {
    constexpr double size = 400.0;
    constexpr double margin = 40.0;
    const double cell = size / (resolution + 1);
    auto x_of = [&](double gamma) { return margin + gamma * size; };
    auto y_of = [&](double sigma) { return margin + (1.0 - sigma) * size; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
    out += "<rect x=\"40\" y=\"40\" width=\"400\" height=\"400\" fill=\"white\" stroke=\"black\"/>\n";
    out += "<g fill=\"#9ecae1\" stroke=\"none\">\n";
    for (const auto& s : samples) {
        if (!s.full_exploitation)
            continue;
        const double x = x_of(s.point.gamma) - cell / 2.0 * (s.point.gamma > 0.0 ? 1.0 : 0.0);
        const double y = y_of(s.point.sigma) - cell / 2.0 * (s.point.sigma < 1.0 ? 1.0 : 0.0);
        out += "<rect x=\"" + format_number(x) + "\" y=\"" + format_number(y) + "\" width=\"" + format_number(cell) +
               "\" height=\"" + format_number(cell) + "\"/>\n";
    }
    out += "</g>\n<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
    constexpr int curve_points = 200;
    for (int k = 0; k <= curve_points; ++k) {
        const double sigma = static_cast<double>(k) / curve_points;
        out += (k ? " " : "") + format_number(x_of(boundary_curve(sigma))) + "," + format_number(y_of(sigma));
    }
    out += "\"/>\n";
    out += "<text x=\"240\" y=\"470\" text-anchor=\"middle\">gamma</text>\n";
    out += "<text x=\"15\" y=\"240\" text-anchor=\"middle\" transform=\"rotate(-90 15 240)\">sigma</text>\n";
    out += "</svg>\n";
    return out;
}

/// Writes `content` to `path`, replacing any existing file.
inline void write_output(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot open output file " + path);
    file << content;
    file.flush();
    if (!file)
        throw std::runtime_error("failed writing output file " + path);
}

} // namespace middleman

#endif // MIDDLEMAN_REPORT_HPP
