// Test-only reference evaluators. These restate the payoff formulas directly
// with plain lambdas so the library's evaluation path is checked against an
// independent route.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include <middleman/middleman.hpp>

namespace oracle {

using Fn2 = std::function<double(double, double)>;

inline double capped_user(double benefit, double fee) { return fee <= benefit ? benefit - fee : 0.0; }

/// Activity-level game built from raw lambdas: users f_i - rho_i, middleman (rho1 + rho2) g.
inline middleman::GamePayoffs activity_game(Fn2 f1, Fn2 f2, Fn2 g) {
    using middleman::StrategyProfile;
    middleman::GamePayoffs game;
    game.payoff_user1 = [f1](const StrategyProfile& x) { return capped_user(f1(x.s1, x.s2), x.rho1); };
    game.payoff_user2 = [f2](const StrategyProfile& x) { return capped_user(f2(x.s1, x.s2), x.rho2); };
    game.payoff_middleman = [f1, f2, g](const StrategyProfile& x) {
        if (x.rho1 > f1(x.s1, x.s2) || x.rho2 > f2(x.s1, x.s2))
            return 0.0;
        return (x.rho1 + x.rho2) * g(x.s1, x.s2);
    };
    return game;
}

inline double product(double a, double b) { return a * b; }
inline double mean(double a, double b) { return 0.5 * a + 0.5 * b; }

/// Neo-additive middleman payoff for the activity model, written out longhand.
inline double modified_activity_payoff(const Fn2& f1, const Fn2& f2, const Fn2& g, double lambda, double gamma,
                                       double l1, double l2, double s1, double s2, double rho1, double rho2) {
    const double optimistic = (rho1 <= f1(1, 1) && rho2 <= f2(1, 1)) ? (rho1 + rho2) * g(1, 1) : 0.0;
    const double pessimistic = (rho1 <= f1(l1, l2) && rho2 <= f2(l1, l2)) ? (rho1 + rho2) * g(l1, l2) : 0.0;
    const double standard = (rho1 <= f1(s1, s2) && rho2 <= f2(s1, s2)) ? (rho1 + rho2) * g(s1, s2) : 0.0;
    return lambda * optimistic + gamma * pessimistic + (1 - lambda - gamma) * standard;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = fn(a) + fn(b);
    for (int k = 1; k < panels; ++k)
        sum += fn(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

/// Random strictly increasing benefit: Cobb-Douglas exponents in [0.5, 2] or linear weights in (0, 1].
inline middleman::BenefitSpec random_benefit(std::mt19937_64& rng, bool& is_cobb_douglas) {
    std::uniform_real_distribution<double> exponent(0.5, 2.0);
    std::uniform_real_distribution<double> weight(1e-3, 1.0);
    is_cobb_douglas = std::bernoulli_distribution(0.5)(rng);
    if (is_cobb_douglas)
        return middleman::BenefitSpec::cobb_douglas(exponent(rng), exponent(rng));
    return middleman::BenefitSpec::linear(weight(rng), weight(rng));
}

} // namespace oracle
