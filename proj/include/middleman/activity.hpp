/**
 * @file activity.hpp
 * @brief Activity-level specialization: income (rho1 + rho2) * g(s1, s2),
 *        the ratio form of the threshold, the normalized (gamma, sigma)
 *        benchmark and its region lattice.
 */
#ifndef MIDDLEMAN_ACTIVITY_HPP
#define MIDDLEMAN_ACTIVITY_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "ambiguity.hpp"
#include "hedonic.hpp"

namespace middleman {

/// Weak increase of the activity function per coordinate on the node lattice.
inline bool axiom3_check(const BenefitSpec& g, const Grid& grid) {
    return detail::benefit_monotone(g, grid, detail::weakly_increases);
}

enum class Corollary1Verdict {
    full_exploitation,
    competitive,
    /// phi_hat = 0 or g(s*) = 0: the pessimistic income vanishes and full exploitation holds trivially.
    zero_pessimistic_income,
};

inline const char* to_string(Corollary1Verdict v) noexcept {
    switch (v) {
    case Corollary1Verdict::full_exploitation: return "full_exploitation";
    case Corollary1Verdict::competitive: return "competitive";
    case Corollary1Verdict::zero_pessimistic_income: return "zero_pessimistic_income";
    }
    return "unknown";
}

inline bool implies_full_exploitation(Corollary1Verdict v) noexcept { return v != Corollary1Verdict::competitive; }

namespace detail {

struct RatioTerms {
    double full_sum;     // f1(1,1) + f2(1,1)
    double loyalty_sum;  // f1(s*) + f2(s*)
    double full_activity;
    double loyalty_activity;
};

inline RatioTerms ratio_terms(const HedonicGame& game, const BeliefSystem& beliefs) {
    require_threshold_domain(beliefs);
    const BenefitSpec& g = game.income.activity();
    const FeePair full = full_extraction_fees(game);
    const FeePair phi = loyalty_fees(game, beliefs);
    return {full.rho1 + full.rho2, phi.rho1 + phi.rho2, g(1.0, 1.0), g(beliefs.loyalty1, beliefs.loyalty2)};
}

} // namespace detail

/**
 * @brief Left side (F_sum / phi_sum - 1) * g(1,1) / g(s*).
 * @throws std::domain_error when phi_sum or g(s*) is zero.
 */
inline double corollary1_ratio(const HedonicGame& game, const BeliefSystem& beliefs) {
    const auto t = detail::ratio_terms(game, beliefs);
    if (t.loyalty_sum == 0.0)
        throw std::domain_error("ratio undefined: loyalty fees sum to zero");
    if (t.loyalty_activity == 0.0)
        throw std::domain_error("ratio undefined: activity at the loyalty levels is zero");
    return (t.full_sum / t.loyalty_sum - 1.0) * (t.full_activity / t.loyalty_activity);
}

/// Ratio form of the full-exploitation condition for multiplicative income.
inline Corollary1Verdict corollary1_condition(const HedonicGame& game, const BeliefSystem& beliefs) {
    const auto t = detail::ratio_terms(game, beliefs);
    if (t.loyalty_sum == 0.0 || t.loyalty_activity == 0.0)
        return Corollary1Verdict::zero_pessimistic_income;
    const double lhs = (t.full_sum / t.loyalty_sum - 1.0) * (t.full_activity / t.loyalty_activity);
    return lhs >= beliefs.gamma / (1.0 - beliefs.gamma) ? Corollary1Verdict::full_exploitation
                                                        : Corollary1Verdict::competitive;
}

struct BenchmarkPoint {
    double gamma = 0.0;
    double sigma = 0.0;
    friend bool operator==(const BenchmarkPoint&, const BenchmarkPoint&) = default;
};

/**
 * (1 - gamma)(1 - sigma) >= gamma sigma^2, total on the unit square. Evaluated
 * as gamma (1 - sigma + sigma^2) <= 1 - sigma, which keeps binding points such
 * as (2/3, 1/2) on the inclusive side after rounding.
 */
inline bool corollary2_condition(BenchmarkPoint p) noexcept {
    return p.gamma * (1.0 - p.sigma + p.sigma * p.sigma) <= 1.0 - p.sigma;
}

/// gamma*(sigma) = (1 - sigma) / (1 - sigma + sigma^2); full exploitation iff gamma <= gamma*(sigma).
inline double boundary_curve(double sigma) {
    if (!(sigma >= 0.0 && sigma <= 1.0))
        throw precondition_error("sigma must lie in [0,1]");
    return (1.0 - sigma) / (1.0 - sigma + sigma * sigma);
}

/**
 * A normalized benchmark instance: f1 = f2 = g = (s1 + s2) / 2 with loyalty
 * levels (sigma, sigma), so f(1,1) = g(1,1) = 1 and f(s*) = g(s*) = sigma.
 */
inline std::pair<HedonicGame, BeliefSystem> benchmark_instance(BenchmarkPoint p) {
    const BenefitSpec f = BenefitSpec::linear(0.5, 0.5);
    HedonicGame game{f, f, IncomeSpec::multiplicative(f), GameTag::benchmark};
    BeliefSystem beliefs{0.0, p.gamma, p.sigma, p.sigma};
    beliefs.require_proper();
    return {std::move(game), beliefs};
}

struct RegionSample {
    BenchmarkPoint point;
    bool full_exploitation = false;
    /// gamma = 1 or sigma = 1: the inequality is evaluated but the equilibrium result does not cover the point.
    bool outside_hypotheses = false;
};

/// (resolution+1)^2 lattice over [0,1]^2, row-major in gamma then sigma.
inline std::vector<RegionSample> region_sample(int resolution) {
    if (resolution < 2)
        throw precondition_error("region resolution must be at least 2");
    const auto n = static_cast<std::size_t>(resolution) + 1;
    auto coord = [resolution](std::size_t k) {
        return static_cast<int>(k) == resolution ? 1.0 : static_cast<double>(k) / resolution;
    };
    std::vector<RegionSample> samples(n * n);
    detail::parallel_all_of(n, [&](std::size_t row) {
        for (std::size_t col = 0; col < n; ++col) {
            const BenchmarkPoint p{coord(row), coord(col)};
            samples[row * n + col] = {p, corollary2_condition(p), p.gamma == 1.0 || p.sigma == 1.0};
        }
        return true;
    });
    return samples;
}

} // namespace middleman

#endif // MIDDLEMAN_ACTIVITY_HPP
