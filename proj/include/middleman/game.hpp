/**
 * @file game.hpp
 * @brief Strategic-form three-player games and brute-force equilibrium oracles.
 *
 * All oracles enumerate a Grid. Users deviate in their own participation
 * level only; the middleman deviates in the fee pair jointly. An improvement
 * counts only when it exceeds eps strictly.
 */
#ifndef MIDDLEMAN_GAME_HPP
#define MIDDLEMAN_GAME_HPP

#include <array>
#include <concepts>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include "core.hpp"

namespace middleman {

template <class G>
concept ThreePlayerGame = requires(const G& game, Player p, const StrategyProfile& x) {
    { game.payoff(p, x) } -> std::convertible_to<double>;
};

/**
 * Optional fast path: a game may expose at_participation(s1, s2) returning an
 * object whose payoff(Player, FeePair) equals payoff(Player, {s1, s2, fees}).
 * The oracles use it to evaluate participation-dependent terms once per level.
 */
template <class G>
concept SliceableGame = ThreePlayerGame<G> && requires(const G& game, double s, Player p, FeePair fees) {
    { game.at_participation(s, s).payoff(p, fees) } -> std::convertible_to<double>;
};

/// A game given by three arbitrary payoff callables.
struct GamePayoffs {
    using PayoffFn = std::function<double(const StrategyProfile&)>;

    PayoffFn payoff_user1;
    PayoffFn payoff_user2;
    PayoffFn payoff_middleman;

    double payoff(Player p, const StrategyProfile& x) const {
        switch (p) {
        case Player::user1: return payoff_user1(x);
        case Player::user2: return payoff_user2(x);
        case Player::middleman: return payoff_middleman(x);
        }
        throw std::logic_error("unknown player");
    }
};

template <ThreePlayerGame G>
std::array<double, 3> payoff_vector(const G& game, const StrategyProfile& x) {
    return {game.payoff(Player::user1, x), game.payoff(Player::user2, x), game.payoff(Player::middleman, x)};
}

namespace detail {

inline void require_tolerance(double eps) {
    if (!(eps >= 0.0))
        throw precondition_error("tolerance eps must be nonnegative");
}

template <class G>
struct GenericSlice {
    const G* game;
    double s1;
    double s2;
    double payoff(Player p, FeePair fees) const { return game->payoff(p, StrategyProfile{s1, s2, fees.rho1, fees.rho2}); }
};

template <ThreePlayerGame G>
auto slice(const G& game, double s1, double s2) {
    if constexpr (SliceableGame<G>)
        return game.at_participation(s1, s2);
    else
        return GenericSlice<G>{&game, s1, s2};
}

inline void require_user(Player p) {
    if (p == Player::middleman)
        throw precondition_error("dominance is only checked for user 1 or user 2");
}

} // namespace detail

/**
 * @brief True iff no player gains more than eps by a unilateral grid deviation.
 */
template <ThreePlayerGame G>
bool epsilon_nash_check(const G& game, const StrategyProfile& profile, const Grid& grid, double eps) {
    grid.validate();
    detail::require_tolerance(eps);
    require_in_strategy_box(profile);

    for (Player user : {Player::user1, Player::user2}) {
        const double base = game.payoff(user, profile);
        for (int k = 0; k <= grid.steps; ++k) {
            const double deviation = game.payoff(user, profile.with_participation(user, grid.participation(k)));
            if (deviation - base > eps)
                return false;
        }
    }

    const double base = game.payoff(Player::middleman, profile);
    const auto at_profile = detail::slice(game, profile.s1, profile.s2);
    const std::size_t n = grid.nodes();
    return detail::parallel_all_of(n, [&](std::size_t k1) {
        const double rho1 = grid.fee(0, static_cast<int>(k1));
        for (int k2 = 0; k2 <= grid.steps; ++k2) {
            const FeePair fees{rho1, grid.fee(1, k2)};
            if (at_profile.payoff(Player::middleman, fees) - base > eps)
                return false;
        }
        return true;
    });
}

/**
 * @brief True iff playing `candidate` is never beaten by more than eps by any
 *        other grid participation level, whatever the other two players do on
 *        the grid.
 */
template <ThreePlayerGame G>
bool weak_dominance_check(const G& game, Player player, double candidate, const Grid& grid, double eps) {
    detail::require_user(player);
    grid.validate();
    detail::require_tolerance(eps);
    if (!(candidate >= 0.0 && candidate <= 1.0))
        throw precondition_error("candidate participation level must lie in [0,1]");

    const std::size_t n = grid.nodes();
    auto slice_at = [&](double own, double theirs) {
        return player == Player::user1 ? detail::slice(game, own, theirs) : detail::slice(game, theirs, own);
    };
    // One work item per (other user's level, rho1) pair; rho2 is scanned inside.
    return detail::parallel_all_of(n * n, [&](std::size_t item) {
        const double s_other = grid.participation(static_cast<int>(item / n));
        const double rho1 = grid.fee(0, static_cast<int>(item % n));
        const auto held_slice = slice_at(candidate, s_other);
        using Slice = std::remove_cv_t<decltype(held_slice)>;
        std::vector<Slice> alternatives;
        alternatives.reserve(n);
        for (int k = 0; k <= grid.steps; ++k)
            alternatives.push_back(slice_at(grid.participation(k), s_other));
        for (int k_rho2 = 0; k_rho2 <= grid.steps; ++k_rho2) {
            const FeePair fees{rho1, grid.fee(1, k_rho2)};
            const double held = held_slice.payoff(player, fees);
            for (const auto& alt : alternatives)
                if (alt.payoff(player, fees) - held > eps)
                    return false;
        }
        return true;
    });
}

/**
 * @brief True iff no grid profile gives every player at least her current
 *        payoff while giving some player more than eps extra.
 */
template <ThreePlayerGame G>
bool pareto_check(const G& game, const StrategyProfile& profile, const Grid& grid, double eps) {
    grid.validate();
    detail::require_tolerance(eps);
    require_in_strategy_box(profile);

    const auto base = payoff_vector(game, profile);
    const std::size_t n = grid.nodes();
    return detail::parallel_all_of(n * n, [&](std::size_t item) {
        const double s1 = grid.participation(static_cast<int>(item / n));
        const double s2 = grid.participation(static_cast<int>(item % n));
        const auto at = detail::slice(game, s1, s2);
        for (int k1 = 0; k1 <= grid.steps; ++k1) {
            for (int k2 = 0; k2 <= grid.steps; ++k2) {
                const FeePair x{grid.fee(0, k1), grid.fee(1, k2)};
                // Middleman first: it rejects most candidates.
                const double pm = at.payoff(Player::middleman, x);
                if (pm < base[2])
                    continue;
                const double p1 = at.payoff(Player::user1, x);
                if (p1 < base[0])
                    continue;
                const double p2 = at.payoff(Player::user2, x);
                if (p2 < base[1])
                    continue;
                if (p1 - base[0] > eps || p2 - base[1] > eps || pm - base[2] > eps)
                    return false;
            }
        }
        return true;
    });
}

/**
 * @brief True iff (0, 0, rho) passes epsilon_nash_check for every sample rho.
 *
 * Hedonic games have an overload that additionally checks the vanishing
 * boundary precondition on the benefit functions.
 */
template <ThreePlayerGame G>
bool trivial_equilibria_check(const G& game, std::span<const FeePair> rho_samples, const Grid& grid, double eps) {
    grid.validate();
    detail::require_tolerance(eps);
    for (const FeePair& rho : rho_samples) {
        if (!epsilon_nash_check(game, StrategyProfile{0.0, 0.0, rho.rho1, rho.rho2}, grid, eps))
            return false;
    }
    return true;
}

} // namespace middleman

#endif // MIDDLEMAN_GAME_HPP
