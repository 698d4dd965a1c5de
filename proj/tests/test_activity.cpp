#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"

using namespace middleman;

namespace {

HedonicGame benchmark_game() { return benchmark_instance({0.0, 0.5}).first; }

} // namespace

TEST(Axiom3Check, Examples) {
    EXPECT_TRUE(axiom3_check(BenefitSpec::constant(1), Grid{10}));
    EXPECT_TRUE(axiom3_check(BenefitSpec::cobb_douglas(1, 1), Grid{10}));
    EXPECT_FALSE(axiom3_check(BenefitSpec::tabulated(2, 2, {0, 1, 0.5, 0.25}), Grid{10}));
}

TEST(Corollary1Condition, WorkedCases) {
    const auto game = benchmark_game();
    EXPECT_DOUBLE_EQ(corollary1_ratio(game, {0, 0.5, 0.5, 0.5}), 2.0);
    EXPECT_EQ(corollary1_condition(game, {0, 0.5, 0.5, 0.5}), Corollary1Verdict::full_exploitation);
    EXPECT_EQ(corollary1_condition(game, {0, 0.8, 0.5, 0.5}), Corollary1Verdict::competitive);
}

TEST(Corollary1Condition, NoUsageDropHoldsOnlyWithoutPessimism) {
    // Benefits depend on nothing, so loyalty fees equal full fees and the left side is 0.
    const auto one = BenefitSpec::constant(1);
    const HedonicGame flat{one, one, IncomeSpec::multiplicative(one), GameTag::externality};
    EXPECT_EQ(corollary1_ratio(flat, {0, 0, 0.3, 0.3}), 0.0);
    EXPECT_EQ(corollary1_condition(flat, {0, 0, 0.3, 0.3}), Corollary1Verdict::full_exploitation);
    for (double gamma : {1e-6, 0.2, 0.9})
        EXPECT_EQ(corollary1_condition(flat, {0, gamma, 0.3, 0.3}), Corollary1Verdict::competitive);
}

TEST(Corollary1Condition, ZeroPessimisticIncome) {
    const auto f = BenefitSpec::cobb_douglas(1, 1);
    const HedonicGame product{f, f, IncomeSpec::multiplicative(f), GameTag::externality};
    const BeliefSystem no_loyalty{0, 0.9, 0, 0.5};
    EXPECT_THROW(corollary1_ratio(product, no_loyalty), std::domain_error);
    EXPECT_EQ(corollary1_condition(product, no_loyalty), Corollary1Verdict::zero_pessimistic_income);
    EXPECT_TRUE(theorem2_verdict(product, no_loyalty).full_exploitation);

    // Positive benefits but zero activity at the loyalty levels.
    const auto lin = BenefitSpec::linear(0.5, 0.5);
    const HedonicGame silent{lin, lin, IncomeSpec::multiplicative(BenefitSpec::cobb_douglas(1, 1)), GameTag::benchmark};
    EXPECT_THROW(corollary1_ratio(silent, no_loyalty), std::domain_error);
    EXPECT_EQ(corollary1_condition(silent, no_loyalty), Corollary1Verdict::zero_pessimistic_income);
    EXPECT_TRUE(theorem2_verdict(silent, no_loyalty).full_exploitation);
}

TEST(Corollary1Condition, RequiresMultiplicativeIncome) {
    const auto f = BenefitSpec::linear(0.5, 0.5);
    const HedonicGame additive{f, f, IncomeSpec::additive_fees()};
    EXPECT_THROW(corollary1_condition(additive, {0, 0.5, 0.5, 0.5}), precondition_error);
    EXPECT_THROW(corollary1_condition(benchmark_game(), {0, 1.0, 0.5, 0.5}), precondition_error);
}

TEST(Corollary1Condition, AgreesWithTheorem2OnRandomGames) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int compared = 0;
    for (int i = 0; i < 500; ++i) {
        bool cd = false;
        HedonicGame game{oracle::random_benefit(rng, cd), oracle::random_benefit(rng, cd),
                         IncomeSpec::multiplicative(oracle::random_benefit(rng, cd))};
        const double gamma = 0.99 * u(rng);
        const BeliefSystem b{(1 - gamma) * u(rng), gamma, u(rng), u(rng)};
        const auto v = theorem2_verdict(game, b);
        const auto c = corollary1_condition(game, b);
        if (std::abs(v.slack()) <= 1e-9)
            continue;
        ++compared;
        EXPECT_EQ(implies_full_exploitation(c), v.full_exploitation);
    }
    EXPECT_GT(compared, 450);
}

TEST(Corollary2Condition, Examples) {
    for (double gamma : {0.0, 0.3, 0.99})
        EXPECT_TRUE(corollary2_condition({gamma, 0.0}));
    EXPECT_FALSE(corollary2_condition({1.0, 0.5}));
    // (1/3)(1/2) = (2/3)(1/4): the binding point counts as full exploitation.
    const double gamma = 2.0 / 3.0;
    EXPECT_TRUE(corollary2_condition({gamma, 0.5}));
    EXPECT_TRUE(corollary2_condition({gamma - 1e-12, 0.5}));
    EXPECT_FALSE(corollary2_condition({gamma + 1e-12, 0.5}));
}

TEST(Corollary2Condition, BenchmarkCollapseOfRatioForm) {
    for (int a = 0; a < 100; ++a)
        for (int b = 1; b < 100; ++b) {
            const BenchmarkPoint p{a / 100.0, b / 100.0};
            const auto [game, beliefs] = benchmark_instance(p);
            EXPECT_EQ(implies_full_exploitation(corollary1_condition(game, beliefs)), corollary2_condition(p))
                << "gamma=" << p.gamma << " sigma=" << p.sigma;
        }
}

TEST(BoundaryCurve, SpotValues) {
    EXPECT_EQ(boundary_curve(0.0), 1.0);
    EXPECT_EQ(boundary_curve(1.0), 0.0);
    EXPECT_NEAR(boundary_curve(0.5), 2.0 / 3.0, 1e-15);
    EXPECT_THROW(boundary_curve(1.5), precondition_error);
}

TEST(BoundaryCurve, SolvesTheEqualityCase) {
    for (int k = 0; k <= 1000; ++k) {
        const double sigma = k / 1000.0;
        const double gamma = boundary_curve(sigma);
        EXPECT_NEAR((1 - gamma) * (1 - sigma), gamma * sigma * sigma, 1e-14);
    }
}

TEST(BoundaryCurve, StrictlyDecreasingIntoUnitInterval) {
    double previous = boundary_curve(0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double current = boundary_curve(k / 1000.0);
        EXPECT_LT(current, previous);
        EXPECT_GE(current, 0.0);
        EXPECT_LE(current, 1.0);
        previous = current;
    }
}

TEST(BoundaryCurve, SeparatesTheRegion) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        const BenchmarkPoint p{u(rng), u(rng)};
        const double threshold = boundary_curve(p.sigma);
        if (std::abs(p.gamma - threshold) <= 1e-12)
            continue;
        EXPECT_EQ(corollary2_condition(p), p.gamma <= threshold);
    }
}

TEST(RegionSample, ResolutionTwo) {
    const auto samples = region_sample(2);
    ASSERT_EQ(samples.size(), 9u);
    auto at = [&](double gamma, double sigma) {
        for (const auto& s : samples)
            if (s.point == BenchmarkPoint{gamma, sigma})
                return s.full_exploitation;
        ADD_FAILURE() << "missing lattice point";
        return false;
    };
    EXPECT_TRUE(at(0, 0));
    EXPECT_TRUE(at(0, 0.5));
    EXPECT_TRUE(at(0.5, 0));
    EXPECT_FALSE(at(1, 0.5));
    EXPECT_FALSE(at(1, 1));
    // Row-major in gamma, then sigma.
    EXPECT_EQ(samples[1].point, (BenchmarkPoint{0, 0.5}));
    EXPECT_EQ(samples[3].point, (BenchmarkPoint{0.5, 0}));
}

TEST(RegionSample, ZeroSigmaColumnAndFlags) {
    const auto samples = region_sample(50);
    for (const auto& s : samples) {
        if (s.point.sigma == 0.0 && s.point.gamma < 1.0) {
            EXPECT_TRUE(s.full_exploitation);
        }
        EXPECT_EQ(s.outside_hypotheses, s.point.gamma == 1.0 || s.point.sigma == 1.0);
    }
}

TEST(RegionSample, RejectsCoarseResolution) {
    EXPECT_THROW(region_sample(1), precondition_error);
}

TEST(RegionSample, MonotoneTowardsOrigin) {
    const int res = 40;
    const auto samples = region_sample(res);
    const auto n = static_cast<std::size_t>(res + 1);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t s = 0; s < n; ++s) {
            if (!samples[g * n + s].full_exploitation)
                continue;
            if (g > 0) {
                EXPECT_TRUE(samples[(g - 1) * n + s].full_exploitation);
            }
            if (s > 0) {
                EXPECT_TRUE(samples[g * n + s - 1].full_exploitation);
            }
        }
}

TEST(RegionSample, ShadedFractionMatchesIntegral) {
    const double area = oracle::simpson([](double s) { return (1 - s) / (1 - s + s * s); }, 0, 1, 2000);
    const auto samples = region_sample(100);
    std::size_t shaded = 0;
    for (const auto& s : samples)
        shaded += s.full_exploitation;
    const double fraction = static_cast<double>(shaded) / samples.size();
    EXPECT_NEAR(fraction, area, 0.02 * area);
}
