#include "oracles.hpp"

#include "quadwalk/errors.hpp"
#include "quadwalk/exact_dp.hpp"
#include "quadwalk/harmonic.hpp"
#include "quadwalk/ladders.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace quadwalk;

namespace {

const ExitSpec quadrant{Region::Quadrant, BoundaryConvention::KillOnNonpositive};
const ExitSpec upper{Region::UpperHalfPlane, BoundaryConvention::KillOnNonpositive};
const ExitSpec right{Region::RightHalfPlane, BoundaryConvention::KillOnNonpositive};

DpOptions no_barrier() {
    DpOptions o;
    o.barrier.reset();
    return o;
}

} // namespace

TEST(QuadrantMeasure, OneStepFromCorner) {
    QuadrantMeasure m(singular_steps(), {1, 1}, quadrant, no_barrier());
    m.step();
    EXPECT_NEAR(m.weight({2, 2}), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.alive_mass(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.killed_mass(), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(m.weight({2, 0}), 0.0);
    EXPECT_EQ(m.weight({0, 2}), 0.0);
}

TEST(QuadrantMeasure, FarFromBoundaryNothingKilled) {
    QuadrantMeasure m(singular_steps(), {50, 50}, quadrant, no_barrier());
    m.advance(10);
    EXPECT_EQ(m.killed_mass(), 0.0);
    EXPECT_NEAR(m.alive_mass(), 1.0, 1e-14);
}

TEST(QuadrantMeasure, MassConservation) {
    for (auto opts : {no_barrier(), DpOptions{}}) {
        QuadrantMeasure m(tilted_singular_steps(), {1, 1}, quadrant, opts);
        m.advance(1000);
        EXPECT_NEAR(m.alive_mass() + m.killed_mass() + m.dropped_mass(), 1.0, 1e-12);
    }
}

TEST(QuadrantMeasure, CsvSnapshot) {
    QuadrantMeasure m(singular_steps(), {1, 1}, quadrant, no_barrier());
    m.step();
    const auto csv = m.to_csv();
    EXPECT_EQ(csv.rfind("x1,x2,weight\n", 0), 0u);
    EXPECT_NE(csv.find("2,2,0.333333333333333"), std::string::npos);
}

TEST(QuadrantMeasure, Errors) {
    EXPECT_THROW(QuadrantMeasure(singular_steps(), {0, 1}, quadrant), InputError);
    DpOptions tiny;
    tiny.barrier = 0;
    try {
        QuadrantMeasure(tilted_singular_steps(), {1, 1}, quadrant, tiny);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.code(), ErrorCode::BarrierTooSmall);
    }
    EXPECT_THROW(survival_prob(tilted_singular_steps(), {1, 1}, -1), InputError);
}

TEST(SurvivalProb, TiltedExamples) {
    const auto sd = tilted_singular_steps();
    EXPECT_DOUBLE_EQ(survival_prob(sd, {1, 1}, 0).value, 1.0);
    EXPECT_NEAR(survival_prob(sd, {1, 1}, 1).value, 0.25, 1e-15);
    EXPECT_NEAR(survival_prob(sd, {1, 1}, 2).value, 0.25, 1e-15);
}

TEST(LocalProb, TiltedExamples) {
    const auto sd = tilted_singular_steps();
    EXPECT_NEAR(local_prob(sd, {1, 1}, {3, 1}, 2), 0.125, 1e-15);
    EXPECT_NEAR(local_prob(sd, {1, 1}, {1, 3}, 2), 0.0625, 1e-15);
    EXPECT_EQ(local_prob(sd, {1, 1}, {2, 1}, 2), 0.0);
}

TEST(HalfPlane, SurvivalExamples) {
    const auto sd = tilted_singular_steps();
    EXPECT_DOUBLE_EQ(half_plane_survival(sd, 1, 0), 1.0);
    EXPECT_NEAR(half_plane_survival(sd, 1, 1), 0.5, 1e-15);
    EXPECT_NEAR(half_plane_survival(sd, 1, 2), 0.5, 1e-15);
}

TEST(HalfPlane, LocalExamples) {
    const auto sd = singular_steps();
    EXPECT_NEAR(half_plane_local(sd, {0, 1}, {1, 2}, 1), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(half_plane_local(sd, {0, 1}, {2, 2}, 1), 0.0);
    // Via (1,2) only; the path through (1,0) is killed.
    EXPECT_NEAR(half_plane_local(sd, {0, 1}, {2, 1}, 2), 1.0 / 9.0, 1e-15);
    double oracle_value = 0.0;
    oracle::enumerate(oracle::singular_uniform(), 0, 1, 2, [](long, long b) { return b >= 1; },
                      [&](long a, long b, double p, bool ok) {
                          if (ok && a == 2 && b == 1) oracle_value += p;
                      });
    EXPECT_NEAR(oracle_value, 1.0 / 9.0, 1e-15);
}

class EnumerationOracle : public ::testing::TestWithParam<int> {};

TEST_P(EnumerationOracle, MatchesAllPaths) {
    const int n = GetParam();
    struct Case {
        ExitSpec spec;
        std::function<bool(long, long)> alive;
    };
    const std::vector<Case> cases{{quadrant, [](long a, long b) { return a >= 1 && b >= 1; }},
                                  {upper, [](long, long b) { return b >= 1; }},
                                  {right, [](long a, long) { return a >= 1; }}};
    for (const auto& [steps, sd] : {std::pair{oracle::singular_uniform(), singular_steps()},
                                    std::pair{oracle::singular_tilted(), tilted_singular_steps()}}) {
        for (const auto& c : cases) {
            for (Point x : {Point{1, 1}, Point{2, 3}}) {
                const auto ends = oracle::surviving_endpoints(steps, x.x1, x.x2, n, c.alive);
                double total = 0.0;
                QuadrantMeasure m(sd, x, c.spec, no_barrier());
                m.advance(n);
                for (const auto& [z, p] : ends) {
                    total += p;
                    EXPECT_NEAR(m.weight({z.first, z.second}), p, 1e-14);
                }
                long support = 0;
                m.for_each([&](Point, double) { ++support; });
                EXPECT_EQ(support, static_cast<long>(ends.size()));
                EXPECT_NEAR(survival_prob(sd, x, n, c.spec, no_barrier()).value, total, 1e-14);
                if (c.spec.region == Region::Quadrant) {
                    EXPECT_NEAR(survival_prob(sd, x, n, c.spec).value, total, 1e-14);
                    for (const auto& [z, p] : ends) EXPECT_NEAR(local_prob(sd, x, {z.first, z.second}, n), p, 1e-14);
                }
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(SmallN, EnumerationOracle, ::testing::Values(1, 2, 3, 5, 8, 10));

TEST(QuadrantExit, IsMinimumOfHalfPlaneExits) {
    // Pointwise AND of the two survival predicates.
    const auto steps = oracle::singular_tilted();
    for (int n = 1; n <= 10; ++n) {
        double both = 0.0;
        oracle::enumerate(steps, 1, 2, n, [](long a, long b) { return a >= 1 && b >= 1; },
                          [&](long, long, double p, bool ok) {
                              if (ok) both += p;
                          });
        EXPECT_NEAR(survival_prob(tilted_singular_steps(), {1, 2}, n, quadrant).value, both, 1e-14);
    }
}

TEST(Barrier, LundbergRootOfTiltedWalk) {
    EXPECT_NEAR(lundberg_root(horizontal_marginal(tilted_singular_steps())), std::log(3.0), 1e-12);
    EXPECT_EQ(auto_barrier(tilted_singular_steps(), 1e-12), 25);
}

TEST(Barrier, DoublingChangesLessThanBound) {
    const auto sd = tilted_singular_steps();
    for (long L : {4L, 8L, 25L}) {
        DpOptions a, b;
        a.barrier = L;
        b.barrier = 2 * L;
        const auto va = survival_prob(sd, {1, 1}, 400, quadrant, a);
        const auto vb = survival_prob(sd, {1, 1}, 400, quadrant, b);
        EXPECT_LE(std::abs(va.value - vb.value), va.error_bound + 1e-15) << L;
        EXPECT_GE(va.value, vb.value - 1e-15);
    }
}

TEST(Barrier, ErrorBoundCoversUnbarrieredValue) {
    const auto sd = tilted_singular_steps();
    DpOptions b;
    b.barrier = 6;
    const auto with = survival_prob(sd, {1, 1}, 300, quadrant, b);
    const auto exact = survival_prob(sd, {1, 1}, 300, quadrant, no_barrier());
    EXPECT_LE(std::abs(with.value - exact.value), with.error_bound);
    EXPECT_GT(with.error_bound, 0.0);
}

TEST(HalfPlane, EnvelopeConverges) {
    const auto sd = tilted_singular_steps();
    const auto V = renewal_V(descending_ladder(vertical_marginal(sd), BoundaryConvention::KillOnNonpositive), 10);
    // V is harmonic under the < 0 rule, so the >= 1 survivors pair with V(x2 - 1).
    double lo = 1e300, hi = 0.0, last = 0.0;
    for (long n : {10L, 100L, 1000L, 10000L}) {
        const double r = std::sqrt(static_cast<double>(n)) * half_plane_survival(sd, 3, n) / V.at(2);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        last = r;
    }
    EXPECT_LT(hi / lo, 1.5);
    EXPECT_NEAR(last, kappa(descending_ladder(vertical_marginal(sd), BoundaryConvention::KillOnNonpositive)), 1e-3);
}

TEST(RunSchedule, VisitsInOrder) {
    QuadrantMeasure m(tilted_singular_steps(), {1, 1}, quadrant);
    std::vector<long> seen;
    run_schedule(m, {5, 0, 2}, [&](const QuadrantMeasure& q) { seen.push_back(q.n()); });
    EXPECT_EQ(seen, (std::vector<long>{0, 2, 5}));
}
