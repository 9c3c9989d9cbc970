#include "quadwalk/errors.hpp"
#include "quadwalk/exact_dp.hpp"
#include "quadwalk/harmonic.hpp"
#include "quadwalk/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace quadwalk;

TEST(SimulateSurvival, OneStepFromCorner) {
    const auto e = simulate_survival(tilted_singular_steps(), {1, 1}, 1, 100000, 7);
    EXPECT_EQ(e.reps, 100000);
    EXPECT_EQ(e.seed, 7u);
    EXPECT_NEAR(e.mean, static_cast<double>(e.hits) / 100000.0, 1e-15);
    EXPECT_LE(std::abs(e.mean - 0.25), e.half_width_95 * 1.5);
    EXPECT_NEAR(e.half_width_95, 1.96 * std::sqrt(0.25 * 0.75 / 100000.0), 2e-4);
}

TEST(SimulateSurvival, ZeroHorizon) {
    const auto e = simulate_survival(tilted_singular_steps(), {1, 1}, 0, 1000, 3);
    EXPECT_EQ(e.mean, 1.0);
    EXPECT_EQ(e.half_width_95, 0.0);
}

TEST(SimulateSurvival, Reproducible) {
    const auto a = simulate_survival(tilted_singular_steps(), {2, 3}, 50, 20000, 11);
    const auto b = simulate_survival(tilted_singular_steps(), {2, 3}, 50, 20000, 11);
    const auto c = simulate_survival(tilted_singular_steps(), {2, 3}, 50, 20000, 12);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_NE(a.hits, c.hits);
}

TEST(SimulateSurvival, ThreadInvariant) {
    McOptions one, four;
    four.threads = 4;
    const auto a = simulate_survival(tilted_singular_steps(), {1, 1}, 40, 30001, 5, one);
    const auto b = simulate_survival(tilted_singular_steps(), {1, 1}, 40, 30001, 5, four);
    EXPECT_EQ(a.hits, b.hits);
    EXPECT_EQ(a.mean, b.mean);
}

TEST(SimulateSurvival, AgreesWithExactDp) {
    const auto sd = tilted_singular_steps();
    for (const ExitSpec spec : {ExitSpec{Region::Quadrant, BoundaryConvention::KillOnNonpositive},
                                ExitSpec{Region::UpperHalfPlane, BoundaryConvention::KillOnNonpositive}}) {
        McOptions o;
        o.threads = 2;
        o.spec = spec;
        const auto mc = simulate_survival(sd, {2, 2}, 30, 200000, 9, o);
        const double exact = survival_prob(sd, {2, 2}, 30, spec).value;
        EXPECT_LE(std::abs(mc.mean - exact), 1.5 * mc.half_width_95);
    }
}

TEST(SimulateLocal, AgreesWithExactDp) {
    const auto sd = tilted_singular_steps();
    const auto mc = simulate_local(sd, {1, 1}, {3, 1}, 2, 100000, 4);
    EXPECT_LE(std::abs(mc.mean - 0.125), 1.5 * mc.half_width_95);
}

TEST(SimulateSurvival, RejectsBadInput) {
    EXPECT_THROW(simulate_survival(tilted_singular_steps(), {1, 1}, -1, 10, 1), InputError);
    EXPECT_THROW(simulate_survival(tilted_singular_steps(), {1, 1}, 5, 0, 1), InputError);
}
