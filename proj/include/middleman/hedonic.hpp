/**
 * @file hedonic.hpp
 * @brief The hedonic intermediated-interaction game: fee-capped user payoffs,
 *        participation-gated middleman payoff, and the monotonicity axioms.
 */
#ifndef MIDDLEMAN_HEDONIC_HPP
#define MIDDLEMAN_HEDONIC_HPP

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "benefit.hpp"
#include "core.hpp"
#include "game.hpp"

namespace middleman {

/// Node values closer than this do not count as a strict increase.
inline constexpr double strictness_tolerance = 1e-12;

/// Default oracle tolerance for analytic benefit families.
inline constexpr double analytic_eps = 1e-9;

/**
 * Benchmark games are expected to satisfy strict monotonicity of both
 * benefit functions; externality games (vanishing benefits on the boundary)
 * are exempt.
 */
enum class GameTag { benchmark, externality };

inline const char* to_string(GameTag tag) noexcept { return tag == GameTag::benchmark ? "benchmark" : "externality"; }

struct HedonicGame {
    BenefitSpec f1;
    BenefitSpec f2;
    IncomeSpec income;
    GameTag tag = GameTag::benchmark;

    const BenefitSpec& benefit(Player user) const {
        if (user == Player::middleman)
            throw precondition_error("the middleman has no benefit function");
        return user == Player::user1 ? f1 : f2;
    }

    double payoff(Player p, const StrategyProfile& x) const;

    /// Payoffs at fixed participation with benefits and activity evaluated once.
    struct Slice {
        double s1;
        double s2;
        double f1;
        double f2;
        const IncomeSpec* income;
        double activity; // used when multiplicative is set
        bool multiplicative;

        double payoff(Player p, FeePair fees) const {
            switch (p) {
            case Player::user1: return fees.rho1 <= f1 ? f1 - fees.rho1 : 0.0;
            case Player::user2: return fees.rho2 <= f2 ? f2 - fees.rho2 : 0.0;
            case Player::middleman: break;
            }
            if (fees.rho1 > f1 || fees.rho2 > f2)
                return 0.0;
            return multiplicative ? (fees.rho1 + fees.rho2) * activity : (*income)(fees, s1, s2);
        }
    };

    Slice at_participation(double s1, double s2) const {
        const bool mult = income.is_multiplicative();
        return {s1, s2, f1(s1, s2), f2(s1, s2), &income, mult ? income.activity()(s1, s2) : 0.0, mult};
    }

    friend bool operator==(const HedonicGame&, const HedonicGame&) = default;
};

/// f_i(s1,s2) - rho_i when the fee does not exceed the benefit, otherwise 0.
inline double user_payoff(const HedonicGame& game, Player user, const StrategyProfile& x) {
    const double benefit = game.benefit(user)(x.s1, x.s2);
    const double fee = user == Player::user1 ? x.rho1 : x.rho2;
    return fee <= benefit ? benefit - fee : 0.0;
}

/// Income when neither user is overcharged, otherwise 0.
inline double middleman_payoff(const HedonicGame& game, const StrategyProfile& x) {
    if (x.rho1 > game.f1(x.s1, x.s2) || x.rho2 > game.f2(x.s1, x.s2))
        return 0.0;
    return game.income(x.fees(), x.s1, x.s2);
}

inline double HedonicGame::payoff(Player p, const StrategyProfile& x) const {
    return p == Player::middleman ? middleman_payoff(*this, x) : user_payoff(*this, p, x);
}

/// Full extraction fee pair F = (f1(1,1), f2(1,1)).
inline FeePair full_extraction_fees(const HedonicGame& game) { return {game.f1(1.0, 1.0), game.f2(1.0, 1.0)}; }

namespace detail {

// Checks every adjacent pair along both coordinates of an rows x cols lattice.
template <class At, class Increase>
bool lattice_monotone(std::size_t rows, std::size_t cols, At at, Increase increases) {
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = at(i, j);
            if (i + 1 < rows && !increases(v, at(i + 1, j)))
                return false;
            if (j + 1 < cols && !increases(v, at(i, j + 1)))
                return false;
        }
    return true;
}

template <class Increase>
bool benefit_monotone(const BenefitSpec& f, const Grid& grid, Increase increases) {
    grid.validate();
    if (const auto* t = std::get_if<Tabulated>(&f.family())) {
        return lattice_monotone(t->rows, t->cols, [t](std::size_t i, std::size_t j) { return t->values[i * t->cols + j]; },
                                increases);
    }
    return lattice_monotone(grid.nodes(), grid.nodes(),
                            [&](std::size_t i, std::size_t j) {
                                return f(grid.participation(static_cast<int>(i)), grid.participation(static_cast<int>(j)));
                            },
                            increases);
}

inline bool strictly_increases(double a, double b) { return b - a > strictness_tolerance; }
inline bool weakly_increases(double a, double b) { return b >= a; }

} // namespace detail

/**
 * @brief Strict increase of f in each argument along every lattice line.
 *
 * Parametric families are checked on the participation lattice of `grid`;
 * tabulated families on their own node lattice.
 */
inline bool axiom1_check(const BenefitSpec& f, const Grid& grid) {
    return detail::benefit_monotone(f, grid, detail::strictly_increases);
}

/// Weak increase in each of the four arguments (rho1, rho2, s1, s2).
inline bool axiom2_check(const IncomeSpec& income, const Grid& grid) {
    grid.validate();
    if (const auto* t = std::get_if<TabulatedIncome>(&income.family())) {
        const auto& r = t->resolution;
        for (std::size_t a = 0; a < r[0]; ++a)
            for (std::size_t b = 0; b < r[1]; ++b)
                for (std::size_t c = 0; c < r[2]; ++c)
                    for (std::size_t d = 0; d < r[3]; ++d) {
                        const double v = t->values[t->index(a, b, c, d)];
                        if ((a + 1 < r[0] && t->values[t->index(a + 1, b, c, d)] < v) ||
                            (b + 1 < r[1] && t->values[t->index(a, b + 1, c, d)] < v) ||
                            (c + 1 < r[2] && t->values[t->index(a, b, c + 1, d)] < v) ||
                            (d + 1 < r[3] && t->values[t->index(a, b, c, d + 1)] < v))
                            return false;
                    }
        return true;
    }

    const int n = grid.steps;
    const auto nodes = grid.nodes();
    // Activity values on the participation lattice, evaluated once.
    std::vector<double> activity;
    if (income.is_multiplicative()) {
        activity.resize(nodes * nodes);
        for (int c = 0; c <= n; ++c)
            for (int d = 0; d <= n; ++d)
                activity[c * nodes + d] = income.activity()(grid.participation(c), grid.participation(d));
    }
    auto at = [&](int a, int b, int c, int d) {
        const FeePair fees{grid.fee(0, a), grid.fee(1, b)};
        if (!activity.empty())
            return (fees.rho1 + fees.rho2) * activity[c * nodes + d];
        return income(fees, grid.participation(c), grid.participation(d));
    };
    return detail::parallel_all_of(grid.nodes(), [&](std::size_t item) {
        const int a = static_cast<int>(item);
        for (int b = 0; b <= n; ++b)
            for (int c = 0; c <= n; ++c)
                for (int d = 0; d <= n; ++d) {
                    const double v = at(a, b, c, d);
                    if ((a < n && at(a + 1, b, c, d) < v) || (b < n && at(a, b + 1, c, d) < v) ||
                        (c < n && at(a, b, c + 1, d) < v) || (d < n && at(a, b, c, d + 1) < v))
                        return false;
                }
        return true;
    });
}

/**
 * Oracle grid for a hedonic game. Fee axis i spans [0, max(1, f_i(1,1))] so
 * the full extraction fees are always representable.
 */
inline Grid default_grid(const HedonicGame& game, int steps, double participation_lower = 0.0) {
    const FeePair full = full_extraction_fees(game);
    Grid grid{steps, {std::max(1.0, full.rho1), std::max(1.0, full.rho2)}, participation_lower};
    grid.validate();
    return grid;
}

/**
 * 1e-9 for analytic families. Games with tabulated data get the grid
 * Lipschitz slack: largest tabulated slope times the largest grid step.
 */
inline double default_eps(const HedonicGame& game, const Grid& grid) {
    const bool tabulated = game.f1.is_tabulated() || game.f2.is_tabulated() || game.income.is_tabulated();
    if (!tabulated)
        return analytic_eps;
    double slope = std::max(game.f1.max_slope(), game.f2.max_slope());
    if (game.income.is_multiplicative())
        slope = std::max(slope, game.income.activity().max_slope() * (grid.fee_bounds[0] + grid.fee_bounds[1]));
    if (const auto* t = std::get_if<TabulatedIncome>(&game.income.family())) {
        const std::array<double, 4> spans{t->fee_bounds[0], t->fee_bounds[1], 1.0, 1.0};
        const auto& r = t->resolution;
        for (std::size_t a = 0; a < r[0]; ++a)
            for (std::size_t b = 0; b < r[1]; ++b)
                for (std::size_t c = 0; c < r[2]; ++c)
                    for (std::size_t d = 0; d < r[3]; ++d) {
                        const std::array<std::size_t, 4> idx{a, b, c, d};
                        const double v = t->values[t->index(a, b, c, d)];
                        for (std::size_t axis = 0; axis < 4; ++axis) {
                            if (idx[axis] + 1 >= r[axis])
                                continue;
                            auto next = idx;
                            ++next[axis];
                            const double h = spans[axis] / static_cast<double>(r[axis] - 1);
                            slope = std::max(slope, std::abs(t->values[t->index(next[0], next[1], next[2], next[3])] - v) / h);
                        }
                    }
    }
    const double step = std::max({grid.participation_step(), grid.fee_bounds[0] / grid.steps, grid.fee_bounds[1] / grid.steps});
    return std::max(analytic_eps, slope * step);
}

/// Rejects benchmark-tagged games whose benefit functions violate strict monotonicity on `grid`.
inline void validate_game(const HedonicGame& game, const Grid& grid) {
    if (game.tag != GameTag::benchmark)
        return;
    if (!axiom1_check(game.f1, grid))
        throw precondition_error("benchmark game: f1 is not strictly increasing on the working grid");
    if (!axiom1_check(game.f2, grid))
        throw precondition_error("benchmark game: f2 is not strictly increasing on the working grid");
}

/**
 * @brief Zero-participation equilibria (0, 0, rho) for every sampled rho.
 *
 * Requires both benefit functions to vanish when either user stays out,
 * checked at (0,1) and (1,0).
 */
inline bool trivial_equilibria_check(const HedonicGame& game, std::span<const FeePair> rho_samples, const Grid& grid,
                                     double eps) {
    for (Player user : {Player::user1, Player::user2}) {
        const BenefitSpec& f = game.benefit(user);
        if (f(0.0, 1.0) != 0.0 || f(1.0, 0.0) != 0.0)
            throw precondition_error(std::string("trivial equilibria need benefits that vanish at zero participation; ") +
                                     "f of " + to_string(user) + " is positive at (0,1) or (1,0)");
    }
    return trivial_equilibria_check<HedonicGame>(game, rho_samples, grid, eps);
}

} // namespace middleman

#endif // MIDDLEMAN_HEDONIC_HPP
