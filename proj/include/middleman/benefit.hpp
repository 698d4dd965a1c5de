/**
 * @file benefit.hpp
 * @brief Benefit / activity functions on [0,1]^2 and middleman income functions.
 *
 * Tabulated data is interpolated multilinearly between nodes and is immutable
 * once constructed.
 */
#ifndef MIDDLEMAN_BENEFIT_HPP
#define MIDDLEMAN_BENEFIT_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"

namespace middleman {

namespace detail {

struct AxisPosition {
    std::size_t lower;
    double weight; // weight of node lower + 1
};

// Position of x on `nodes` equally spaced nodes over [0, upper]; clamps outside.
inline AxisPosition locate(double x, std::size_t nodes, double upper) {
    const double cells = static_cast<double>(nodes - 1);
    double u = upper > 0.0 ? x / upper * cells : 0.0;
    u = std::clamp(u, 0.0, cells);
    auto i = static_cast<std::size_t>(std::floor(u));
    if (i >= nodes - 1)
        return {nodes - 2, 1.0};
    return {i, u - static_cast<double>(i)};
}

inline void require_finite_nonnegative(const std::vector<double>& values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw precondition_error(std::string(what) + " values must be finite and nonnegative");
}

} // namespace detail

/// f(s1, s2) = scale * s1^alpha * s2^beta
struct CobbDouglas {
    double alpha = 1.0;
    double beta = 1.0;
    double scale = 1.0;
    friend bool operator==(const CobbDouglas&, const CobbDouglas&) = default;
};

/// f(s1, s2) = w1 * s1 + w2 * s2
struct Linear {
    double w1 = 0.5;
    double w2 = 0.5;
    friend bool operator==(const Linear&, const Linear&) = default;
};

struct Constant {
    double value = 1.0;
    friend bool operator==(const Constant&, const Constant&) = default;
};

/// Row-major node values: values[i * cols + j] = f(i / (rows - 1), j / (cols - 1)).
struct Tabulated {
    std::size_t rows = 2;
    std::size_t cols = 2;
    std::vector<double> values;
    friend bool operator==(const Tabulated&, const Tabulated&) = default;
};

class BenefitSpec {
public:
    using Family = std::variant<CobbDouglas, Linear, Constant, Tabulated>;

    BenefitSpec() : family_(Linear{}) {}

    static BenefitSpec cobb_douglas(double alpha, double beta, double scale = 1.0) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw precondition_error("Cobb-Douglas exponents must be positive");
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw precondition_error("Cobb-Douglas scale must be positive");
        return BenefitSpec(CobbDouglas{alpha, beta, scale});
    }

    static BenefitSpec linear(double w1, double w2) {
        if (!(w1 >= 0.0) || !(w2 >= 0.0) || !std::isfinite(w1) || !std::isfinite(w2))
            throw precondition_error("linear weights must be finite and nonnegative");
        return BenefitSpec(Linear{w1, w2});
    }

    static BenefitSpec constant(double value) {
        if (!(value >= 0.0) || !std::isfinite(value))
            throw precondition_error("constant benefit must be finite and nonnegative");
        return BenefitSpec(Constant{value});
    }

    static BenefitSpec tabulated(std::size_t rows, std::size_t cols, std::vector<double> values) {
        if (rows < 2 || cols < 2)
            throw precondition_error("tabulated benefit needs at least 2 nodes per axis");
        if (values.size() != rows * cols)
            throw precondition_error("tabulated benefit has " + std::to_string(values.size()) + " values, expected " +
                                     std::to_string(rows * cols));
        detail::require_finite_nonnegative(values, "tabulated benefit");
        return BenefitSpec(Tabulated{rows, cols, std::move(values)});
    }

    const Family& family() const noexcept { return family_; }

    bool is_tabulated() const noexcept { return std::holds_alternative<Tabulated>(family_); }

    double operator()(double s1, double s2) const {
        return std::visit([&](const auto& f) { return evaluate(f, s1, s2); }, family_);
    }

    /// Largest absolute slope along any coordinate; the nodes bound it for tabulated data.
    double max_slope() const {
        return std::visit([](const auto& f) { return slope_bound(f); }, family_);
    }

    friend bool operator==(const BenefitSpec&, const BenefitSpec&) = default;

private:
    explicit BenefitSpec(Family family) : family_(std::move(family)) {}

    static double evaluate(const CobbDouglas& f, double s1, double s2) {
        return f.scale * std::pow(s1, f.alpha) * std::pow(s2, f.beta);
    }
    static double evaluate(const Linear& f, double s1, double s2) { return f.w1 * s1 + f.w2 * s2; }
    static double evaluate(const Constant& f, double, double) { return f.value; }
    static double evaluate(const Tabulated& f, double s1, double s2) {
        const auto a = detail::locate(s1, f.rows, 1.0);
        const auto b = detail::locate(s2, f.cols, 1.0);
        auto at = [&](std::size_t i, std::size_t j) { return f.values[i * f.cols + j]; };
        const double lo = (1.0 - b.weight) * at(a.lower, b.lower) + b.weight * at(a.lower, b.lower + 1);
        const double hi = (1.0 - b.weight) * at(a.lower + 1, b.lower) + b.weight * at(a.lower + 1, b.lower + 1);
        return (1.0 - a.weight) * lo + a.weight * hi;
    }

    static double slope_bound(const CobbDouglas& f) {
        // d/ds s^a is unbounded at 0 for a < 1; callers use this for tabulated data only.
        return f.scale * std::max({f.alpha, f.beta, 1.0});
    }
    static double slope_bound(const Linear& f) { return std::max(f.w1, f.w2); }
    static double slope_bound(const Constant&) { return 0.0; }
    static double slope_bound(const Tabulated& f) {
        double m = 0.0;
        const double h1 = 1.0 / static_cast<double>(f.rows - 1);
        const double h2 = 1.0 / static_cast<double>(f.cols - 1);
        for (std::size_t i = 0; i < f.rows; ++i)
            for (std::size_t j = 0; j < f.cols; ++j) {
                const double v = f.values[i * f.cols + j];
                if (i + 1 < f.rows)
                    m = std::max(m, std::abs(f.values[(i + 1) * f.cols + j] - v) / h1);
                if (j + 1 < f.cols)
                    m = std::max(m, std::abs(f.values[i * f.cols + j + 1] - v) / h2);
            }
        return m;
    }

    Family family_;
};

/// Benefit function multiplied by a positive constant.
inline BenefitSpec scaled(const BenefitSpec& f, double c) {
    if (!(c > 0.0))
        throw precondition_error("scale factor must be positive");
    return std::visit(
        [c](const auto& fam) -> BenefitSpec {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, CobbDouglas>) {
                return BenefitSpec::cobb_douglas(fam.alpha, fam.beta, fam.scale * c);
            } else if constexpr (std::is_same_v<T, Linear>) {
                return BenefitSpec::linear(fam.w1 * c, fam.w2 * c);
            } else if constexpr (std::is_same_v<T, Constant>) {
                return BenefitSpec::constant(fam.value * c);
            } else {
                std::vector<double> v = fam.values;
                for (double& x : v)
                    x *= c;
                return BenefitSpec::tabulated(fam.rows, fam.cols, std::move(v));
            }
        },
        f.family());
}

/// pi(rho, s1, s2) = (rho1 + rho2) * activity(s1, s2)
struct Multiplicative {
    BenefitSpec activity;
    friend bool operator==(const Multiplicative&, const Multiplicative&) = default;
};

/// pi(rho, s1, s2) = rho1 + rho2
struct AdditiveFees {
    friend bool operator==(const AdditiveFees&, const AdditiveFees&) = default;
};

/**
 * Income tabulated on a (rho1, rho2, s1, s2) node lattice. Fee axis i spans
 * [0, fee_bounds[i]]; fees above the bound are clamped onto it. Values are
 * row-major with s2 varying fastest.
 */
struct TabulatedIncome {
    std::array<std::size_t, 4> resolution{2, 2, 2, 2};
    std::array<double, 2> fee_bounds{1.0, 1.0};
    std::vector<double> values;

    std::size_t index(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const noexcept {
        return ((a * resolution[1] + b) * resolution[2] + c) * resolution[3] + d;
    }
    friend bool operator==(const TabulatedIncome&, const TabulatedIncome&) = default;
};

class IncomeSpec {
public:
    using Family = std::variant<Multiplicative, AdditiveFees, TabulatedIncome>;

    IncomeSpec() : family_(AdditiveFees{}) {}

    static IncomeSpec multiplicative(BenefitSpec activity) { return IncomeSpec(Multiplicative{std::move(activity)}); }

    static IncomeSpec additive_fees() { return IncomeSpec(AdditiveFees{}); }

    static IncomeSpec tabulated(std::array<std::size_t, 4> resolution, std::array<double, 2> fee_bounds,
                                std::vector<double> values) {
        std::size_t total = 1;
        for (std::size_t r : resolution) {
            if (r < 2)
                throw precondition_error("tabulated income needs at least 2 nodes per axis");
            total *= r;
        }
        if (values.size() != total)
            throw precondition_error("tabulated income has " + std::to_string(values.size()) + " values, expected " +
                                     std::to_string(total));
        if (!(fee_bounds[0] > 0.0) || !(fee_bounds[1] > 0.0))
            throw precondition_error("tabulated income fee bounds must be positive");
        detail::require_finite_nonnegative(values, "tabulated income");
        return IncomeSpec(TabulatedIncome{resolution, fee_bounds, std::move(values)});
    }

    const Family& family() const noexcept { return family_; }

    bool is_multiplicative() const noexcept { return std::holds_alternative<Multiplicative>(family_); }

    /// Activity function of the multiplicative family.
    const BenefitSpec& activity() const {
        if (const auto* m = std::get_if<Multiplicative>(&family_))
            return m->activity;
        throw precondition_error("income family is not multiplicative");
    }

    bool is_tabulated() const noexcept {
        if (std::holds_alternative<TabulatedIncome>(family_))
            return true;
        if (const auto* m = std::get_if<Multiplicative>(&family_))
            return m->activity.is_tabulated();
        return false;
    }

    /// Ungated net income pi(rho, s1, s2).
    double operator()(FeePair rho, double s1, double s2) const {
        return std::visit([&](const auto& fam) { return evaluate(fam, rho, s1, s2); }, family_);
    }

    friend bool operator==(const IncomeSpec&, const IncomeSpec&) = default;

private:
    explicit IncomeSpec(Family family) : family_(std::move(family)) {}

    static double evaluate(const Multiplicative& m, FeePair rho, double s1, double s2) {
        return (rho.rho1 + rho.rho2) * m.activity(s1, s2);
    }
    static double evaluate(const AdditiveFees&, FeePair rho, double, double) { return rho.rho1 + rho.rho2; }
    static double evaluate(const TabulatedIncome& t, FeePair rho, double s1, double s2) {
        const std::array<detail::AxisPosition, 4> pos{
            detail::locate(rho.rho1, t.resolution[0], t.fee_bounds[0]),
            detail::locate(rho.rho2, t.resolution[1], t.fee_bounds[1]),
            detail::locate(s1, t.resolution[2], 1.0),
            detail::locate(s2, t.resolution[3], 1.0),
        };
        double sum = 0.0;
        for (unsigned corner = 0; corner < 16; ++corner) {
            double w = 1.0;
            std::array<std::size_t, 4> idx{};
            for (std::size_t axis = 0; axis < 4; ++axis) {
                const bool upper = (corner >> axis) & 1u;
                idx[axis] = pos[axis].lower + (upper ? 1 : 0);
                w *= upper ? pos[axis].weight : 1.0 - pos[axis].weight;
            }
            if (w != 0.0)
                sum += w * t.values[t.index(idx[0], idx[1], idx[2], idx[3])];
        }
        return sum;
    }

    Family family_;
};

} // namespace middleman

#endif // MIDDLEMAN_BENEFIT_HPP
