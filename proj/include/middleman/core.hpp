/**
 * @file core.hpp
 * @brief Strategy profiles, discretization grids and error types shared by
 *        every part of the intermediated-interaction toolkit.
 *
 * The game has three players: two users choosing participation levels
 * s1, s2 in [0,1] and a middleman choosing a fee pair (rho1, rho2) >= 0.
 */
#ifndef MIDDLEMAN_CORE_HPP
#define MIDDLEMAN_CORE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace middleman {

/// Raised when an operation is called outside its documented domain.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Player { user1, user2, middleman };

inline constexpr std::array<Player, 3> all_players{Player::user1, Player::user2, Player::middleman};

inline constexpr std::size_t index_of(Player p) noexcept { return static_cast<std::size_t>(p); }

inline const char* to_string(Player p) noexcept {
    switch (p) {
    case Player::user1: return "user1";
    case Player::user2: return "user2";
    case Player::middleman: return "middleman";
    }
    return "unknown";
}

struct FeePair {
    double rho1 = 0.0;
    double rho2 = 0.0;

    constexpr double operator[](std::size_t i) const noexcept { return i == 0 ? rho1 : rho2; }
    friend constexpr bool operator==(const FeePair&, const FeePair&) = default;
};

/// Participation levels of both users together with the middleman's fees.
struct StrategyProfile {
    double s1 = 0.0;
    double s2 = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;

    constexpr FeePair fees() const noexcept { return {rho1, rho2}; }

    constexpr StrategyProfile with_fees(FeePair f) const noexcept { return {s1, s2, f.rho1, f.rho2}; }

    constexpr StrategyProfile with_participation(Player user, double s) const noexcept {
        StrategyProfile p = *this;
        (user == Player::user1 ? p.s1 : p.s2) = s;
        return p;
    }

    constexpr double participation(Player user) const noexcept { return user == Player::user1 ? s1 : s2; }

    friend constexpr bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

inline bool in_strategy_box(const StrategyProfile& p) noexcept {
    return p.s1 >= 0.0 && p.s1 <= 1.0 && p.s2 >= 0.0 && p.s2 <= 1.0 && p.rho1 >= 0.0 && p.rho2 >= 0.0;
}

inline void require_in_strategy_box(const StrategyProfile& p) {
    if (!in_strategy_box(p))
        throw precondition_error("strategy profile outside the box: participation must lie in [0,1] and fees must be nonnegative");
}

/**
 * @brief Lattice used by the brute-force oracles.
 *
 * Participation axis: {lo + k (1 - lo) / steps}, k = 0..steps, where lo is
 * `participation_lower` (0 for the full unit interval). Fee axis of player i:
 * {k fee_bounds[i] / steps}. The last node of every axis is the bound itself.
 */
struct Grid {
    int steps = 100;
    std::array<double, 2> fee_bounds{1.0, 1.0};
    double participation_lower = 0.0;

    void validate() const {
        if (steps < 2)
            throw precondition_error("grid steps must be at least 2");
        if (!(fee_bounds[0] >= 0.0) || !(fee_bounds[1] >= 0.0))
            throw precondition_error("grid fee bounds must be nonnegative");
        if (!(participation_lower >= 0.0) || !(participation_lower < 1.0))
            throw precondition_error("grid participation lower bound must lie in [0,1)");
    }

    std::size_t nodes() const noexcept { return static_cast<std::size_t>(steps) + 1; }

    double participation(int k) const noexcept {
        if (k == steps)
            return 1.0;
        return participation_lower + (1.0 - participation_lower) * k / steps;
    }

    double fee(std::size_t player, int k) const noexcept {
        if (k == steps)
            return fee_bounds[player];
        return fee_bounds[player] * k / steps;
    }

    double participation_step() const noexcept { return (1.0 - participation_lower) / steps; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

namespace detail {

/**
 * Evaluates pred(i) for i in [0, n) across worker threads and returns whether
 * all calls returned true. The verdict does not depend on the partitioning;
 * workers stop early once any index fails.
 */
template <class Pred>
bool parallel_all_of(std::size_t n, Pred pred) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            if (!pred(i))
                return false;
        return true;
    }
    std::atomic<bool> ok{true};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n && ok.load(std::memory_order_relaxed); i += workers)
                if (!pred(i))
                    ok.store(false, std::memory_order_relaxed);
        });
    }
    for (auto& t : pool)
        t.join();
    return ok.load();
}

} // namespace detail

} // namespace middleman

#endif // MIDDLEMAN_CORE_HPP
