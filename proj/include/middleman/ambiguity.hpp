/**
 * @file ambiguity.hpp
 * @brief Neo-additive beliefs of a contested middleman and the resulting
 *        full-exploitation threshold.
 *
 * Only the middleman is ambiguous. Her optimistic payoff assumes maximal
 * participation (1,1); her pessimistic payoff assumes the loyalty levels
 * (s1*, s2*). The modified payoff mixes optimistic, pessimistic and standard
 * payoffs with weights lambda, gamma and 1 - lambda - gamma.
 */
#ifndef MIDDLEMAN_AMBIGUITY_HPP
#define MIDDLEMAN_AMBIGUITY_HPP

#include <limits>

#include "core.hpp"
#include "game.hpp"
#include "hedonic.hpp"

namespace middleman {

struct BeliefSystem {
    double lambda = 0.0;   ///< degree of optimism
    double gamma = 0.0;    ///< degree of pessimism
    double loyalty1 = 0.0; ///< s1*
    double loyalty2 = 0.0; ///< s2*

    /// lambda + gamma <= 1 with both weights and loyalty levels in [0,1].
    bool is_proper() const noexcept {
        auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
        return unit(lambda) && unit(gamma) && unit(loyalty1) && unit(loyalty2) && lambda + gamma <= 1.0;
    }

    void require_proper() const {
        if (!is_proper())
            throw precondition_error("improper belief system: lambda, gamma and loyalty levels must lie in [0,1] with lambda + gamma <= 1");
    }

    friend bool operator==(const BeliefSystem&, const BeliefSystem&) = default;
};

/// M(rho): income at full participation when both fees respect the benefits at (1,1).
inline double optimistic_payoff(const HedonicGame& game, FeePair rho) {
    if (rho.rho1 > game.f1(1.0, 1.0) || rho.rho2 > game.f2(1.0, 1.0))
        return 0.0;
    return game.income(rho, 1.0, 1.0);
}

/// m(rho): income at the loyalty levels when both fees respect the benefits there.
inline double pessimistic_payoff(const HedonicGame& game, const BeliefSystem& beliefs, FeePair rho) {
    const double s1 = beliefs.loyalty1;
    const double s2 = beliefs.loyalty2;
    if (rho.rho1 > game.f1(s1, s2) || rho.rho2 > game.f2(s1, s2))
        return 0.0;
    return game.income(rho, s1, s2);
}

inline double modified_payoff(const HedonicGame& game, const BeliefSystem& beliefs, const StrategyProfile& x) {
    beliefs.require_proper();
    const FeePair rho = x.fees();
    return beliefs.lambda * optimistic_payoff(game, rho) + beliefs.gamma * pessimistic_payoff(game, beliefs, rho) +
           (1.0 - beliefs.lambda - beliefs.gamma) * middleman_payoff(game, x);
}

/// The transformed game: users keep their standard payoffs, the middleman uses the modified payoff.
class AmbiguityGame {
public:
    AmbiguityGame(const HedonicGame& game, const BeliefSystem& beliefs) : game_(game), beliefs_(beliefs) {
        beliefs_.require_proper();
    }

    double payoff(Player p, const StrategyProfile& x) const {
        return p == Player::middleman ? modified_payoff(game_, beliefs_, x) : user_payoff(game_, p, x);
    }

private:
    const HedonicGame& game_;
    BeliefSystem beliefs_;
};

inline bool ambiguity_equilibrium_check(const HedonicGame& game, const BeliefSystem& beliefs, const StrategyProfile& x,
                                        const Grid& grid, double eps) {
    return epsilon_nash_check(AmbiguityGame(game, beliefs), x, grid, eps);
}

/// phi = (f1(s1*, s2*), f2(s1*, s2*)): full extraction at the loyalty levels.
inline FeePair loyalty_fees(const HedonicGame& game, const BeliefSystem& beliefs) {
    return {game.f1(beliefs.loyalty1, beliefs.loyalty2), game.f2(beliefs.loyalty1, beliefs.loyalty2)};
}

struct ContestationVerdict {
    double delta = 0.0; ///< pi(F,1,1) - pi(phi,1,1)
    double rhs = 0.0;   ///< gamma / (1 - gamma) * pi(phi, s1*, s2*)
    bool full_exploitation = false;
    FeePair full_fees;
    FeePair loyalty_fees;

    double slack() const noexcept { return delta - rhs; }
};

inline void require_threshold_domain(const BeliefSystem& beliefs) {
    beliefs.require_proper();
    if (!(beliefs.gamma < 1.0))
        throw precondition_error("threshold requires gamma < 1");
    if (!(beliefs.loyalty1 < 1.0) || !(beliefs.loyalty2 < 1.0))
        throw precondition_error("threshold requires loyalty levels below 1");
}

/**
 * @brief Full exploitation F beats the loyalty fees phi iff
 *        delta >= gamma / (1 - gamma) * pi(phi, s*), equality included.
 *
 * Assumes the game satisfies the monotonicity axioms; the overload taking a
 * Grid verifies them first.
 */
inline ContestationVerdict theorem2_verdict(const HedonicGame& game, const BeliefSystem& beliefs) {
    require_threshold_domain(beliefs);
    ContestationVerdict v;
    v.full_fees = full_extraction_fees(game);
    v.loyalty_fees = loyalty_fees(game, beliefs);
    v.delta = game.income(v.full_fees, 1.0, 1.0) - game.income(v.loyalty_fees, 1.0, 1.0);
    v.rhs = beliefs.gamma / (1.0 - beliefs.gamma) * game.income(v.loyalty_fees, beliefs.loyalty1, beliefs.loyalty2);
    v.full_exploitation = v.delta >= v.rhs;
    return v;
}

inline ContestationVerdict theorem2_verdict(const HedonicGame& game, const BeliefSystem& beliefs, const Grid& grid) {
    if (!axiom1_check(game.f1, grid) || !axiom1_check(game.f2, grid))
        throw precondition_error("threshold requires strictly increasing benefit functions on the working grid");
    if (!axiom2_check(game.income, grid))
        throw precondition_error("threshold requires a weakly increasing income function on the working grid");
    return theorem2_verdict(game, beliefs);
}

/**
 * Best middleman fee pair at full participation on the fee grid, compared with
 * the two candidates F and phi. `third_fee_wins` flags a grid fee beating both
 * by more than eps.
 */
struct FeeScan {
    FeePair best_fee;
    double best_value = 0.0;
    double value_at_full = 0.0;
    double value_at_loyalty = 0.0;
    bool third_fee_wins = false;
};

inline FeeScan contestation_fee_scan(const HedonicGame& game, const BeliefSystem& beliefs, const Grid& grid, double eps) {
    grid.validate();
    const AmbiguityGame transformed(game, beliefs);
    auto value = [&](FeePair rho) { return transformed.payoff(Player::middleman, StrategyProfile{1.0, 1.0, rho.rho1, rho.rho2}); };

    FeeScan scan;
    scan.value_at_full = value(full_extraction_fees(game));
    scan.value_at_loyalty = value(loyalty_fees(game, beliefs));
    scan.best_value = -std::numeric_limits<double>::infinity();
    for (int k1 = 0; k1 <= grid.steps; ++k1)
        for (int k2 = 0; k2 <= grid.steps; ++k2) {
            const FeePair rho{grid.fee(0, k1), grid.fee(1, k2)};
            const double v = value(rho);
            if (v > scan.best_value) {
                scan.best_value = v;
                scan.best_fee = rho;
            }
        }
    scan.third_fee_wins = scan.best_value - std::max(scan.value_at_full, scan.value_at_loyalty) > eps;
    return scan;
}

} // namespace middleman

#endif // MIDDLEMAN_AMBIGUITY_HPP
