#include "quadwalk/errors.hpp"
#include "quadwalk/walk_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

using namespace quadwalk;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::BadArgument;
}

double weight_of(const StepDistribution& sd, int dx, int dy) {
    for (const auto& a : sd.atoms())
        if (a.dx == dx && a.dy == dy) return a.weight;
    return 0.0;
}

} // namespace

TEST(ValidateSteps, UniformSingular) {
    const auto sd = singular_steps();
    ASSERT_EQ(sd.size(), 3u);
    for (const auto& a : sd.atoms()) EXPECT_NEAR(a.weight, 1.0 / 3.0, 1e-15);
    EXPECT_TRUE(sd.normalized());
    EXPECT_NEAR(sd.total_weight(), 1.0, 1e-12);
}

TEST(ValidateSteps, PointMassAndMerge) {
    const Atom one[] = {{0, 0, 5.0}};
    const auto pm = StepDistribution::from_raw(one);
    ASSERT_EQ(pm.size(), 1u);
    EXPECT_DOUBLE_EQ(pm.atoms()[0].weight, 1.0);

    const Atom dup[] = {{1, 0, 1.0}, {1, 0, 2.0}};
    const auto merged = StepDistribution::from_raw(dup);
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_DOUBLE_EQ(merged.atoms()[0].weight, 1.0);
}

TEST(ValidateSteps, DistinctErrors) {
    EXPECT_EQ(code_of([] { StepDistribution::from_raw({}); }), ErrorCode::EmptySteps);
    const Atom neg[] = {{1, 0, 1.0}, {0, 1, -0.5}};
    EXPECT_EQ(code_of([&] { StepDistribution::from_raw(neg); }), ErrorCode::NegativeWeight);
    const Atom zero[] = {{1, 0, 0.0}, {0, 1, 0.0}};
    EXPECT_EQ(code_of([&] { StepDistribution::from_raw(zero); }), ErrorCode::ZeroTotalWeight);
}

TEST(Moments, Examples) {
    const auto m = compute_moments(singular_steps());
    EXPECT_NEAR(m.mu[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.mu[1], 1.0 / 3.0, 1e-15);

    const Atom one[] = {{0, 0, 1.0}};
    const auto z = compute_moments(StepDistribution::from_raw(one));
    EXPECT_EQ(z.mu[0], 0.0);
    EXPECT_EQ(z.s11, 0.0);
    EXPECT_EQ(z.s12, 0.0);
    EXPECT_EQ(z.s22, 0.0);

    const Atom tilted[] = {{1, -1, 0.5}, {1, 1, 0.25}, {-1, 1, 0.25}};
    const auto t = compute_moments(StepDistribution::from_raw(tilted));
    EXPECT_NEAR(t.mu[0], 0.5, 1e-15);
    EXPECT_NEAR(t.mu[1], 0.0, 1e-15);
    EXPECT_NEAR(t.s11, 0.75, 1e-15);
    EXPECT_NEAR(t.s22, 1.0, 1e-15);
    EXPECT_NEAR(t.s12, -0.5, 1e-15);
}

TEST(Tilt, IdentityAndSingularOptimum) {
    const auto sd = singular_steps();
    const auto id = tilt(sd, {0.0, 0.0});
    EXPECT_NEAR(id.params.phi, 1.0, 1e-15);
    for (const auto& a : sd.atoms()) EXPECT_NEAR(weight_of(id.dist, a.dx, a.dy), a.weight, 1e-15);

    const auto t = tilt(sd, {0.0, -0.5 * std::log(2.0)});
    EXPECT_NEAR(t.params.phi, 2.0 * std::sqrt(2.0) / 3.0, 1e-15);
    EXPECT_NEAR(weight_of(t.dist, 1, -1), 0.5, 1e-15);
    EXPECT_NEAR(weight_of(t.dist, 1, 1), 0.25, 1e-15);
    EXPECT_NEAR(weight_of(t.dist, -1, 1), 0.25, 1e-15);
}

TEST(Tilt, ClosedFormPhi) {
    for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const std::array<double, 2> h{0.5 * std::log(mu / (1.0 - mu)), 0.5 * std::log(mu)};
        EXPECT_NEAR(3.0 * mgf(singular_steps(), h), 2.0 / std::sqrt(1.0 - mu), 1e-12) << mu;
    }
}

TEST(Tilt, RoundTripAndGradient) {
    const Atom raw[] = {{1, 0, 1.0}, {0, 1, 2.0}, {-1, -1, 1.5}, {2, -1, 0.5}};
    const auto sd = StepDistribution::from_raw(raw);
    for (std::array<double, 2> h : {std::array<double, 2>{0.3, -0.2}, {-1.1, 0.7}, {0.05, 0.0}}) {
        const auto fwd = tilt(sd, h);
        const auto back = tilt(fwd.dist, {-h[0], -h[1]});
        for (const auto& a : sd.atoms()) EXPECT_NEAR(weight_of(back.dist, a.dx, a.dy), a.weight, 1e-12);

        const auto m = compute_moments(fwd.dist);
        const double e = 1e-6;
        auto lphi = [&](double a, double b) { return std::log(mgf(sd, {a, b})); };
        const double g0 = (lphi(h[0] + e, h[1]) - lphi(h[0] - e, h[1])) / (2 * e);
        const double g1 = (lphi(h[0], h[1] + e) - lphi(h[0], h[1] - e)) / (2 * e);
        EXPECT_NEAR(m.mu[0], g0, 1e-6 * std::max(1.0, std::abs(g0)));
        EXPECT_NEAR(m.mu[1], g1, 1e-6 * std::max(1.0, std::abs(g1)));
    }
}

TEST(SolveDrift, SingularClosedForms) {
    for (double mu : {0.3, 0.5, 0.7}) {
        const auto tp = solve_drift(singular_steps(), {mu, 0.0});
        EXPECT_NEAR(tp.h[0], 0.5 * std::log(mu / (1.0 - mu)), 1e-12);
        EXPECT_NEAR(tp.h[1], 0.5 * std::log(mu), 1e-12);
        EXPECT_NEAR(3.0 * tp.phi, 2.0 / std::sqrt(1.0 - mu), 1e-12);
        const auto m = compute_moments(tilt(singular_steps(), tp.h).dist);
        EXPECT_NEAR(m.mu[0], mu, 1e-10);
        EXPECT_NEAR(m.mu[1], 0.0, 1e-10);
    }
    const auto half = solve_drift(singular_steps(), {0.5, 0.0});
    EXPECT_NEAR(half.h[0], 0.0, 1e-12);
    EXPECT_NEAR(half.h[1], -0.5 * std::log(2.0), 1e-12);
}

TEST(SolveDrift, NaturalDriftGivesZero) {
    const Atom raw[] = {{1, 0, 1.0}, {0, 1, 2.0}, {-1, -1, 1.5}};
    const auto sd = StepDistribution::from_raw(raw);
    const auto m = compute_moments(sd);
    const auto tp = solve_drift(sd, {m.mu[0], m.mu[1]});
    EXPECT_NEAR(tp.h[0], 0.0, 1e-12);
    EXPECT_NEAR(tp.h[1], 0.0, 1e-12);
    EXPECT_NEAR(tp.phi, 1.0, 1e-12);
}

TEST(SolveDrift, RejectsInfeasibleAndDegenerate) {
    EXPECT_EQ(code_of([] { solve_drift(singular_steps(), {2.0, 0.0}); }), ErrorCode::InfeasibleTarget);
    EXPECT_EQ(code_of([] { solve_drift(singular_steps(), {1.0, 0.0}); }), ErrorCode::InfeasibleTarget);
    const Atom line[] = {{1, 0, 1.0}, {-1, 0, 1.0}};
    EXPECT_EQ(code_of([&] { solve_drift(StepDistribution::from_raw(line), {0.2, 0.0}); }),
              ErrorCode::DegenerateSupport);
}

TEST(Lattice, Examples) {
    const auto ls = lattice_decompose(singular_steps());
    EXPECT_EQ(ls.a1, 1);
    EXPECT_EQ(ls.d1, 2);
    EXPECT_EQ(ls.a2, 1);
    EXPECT_EQ(ls.d2, 2);

    const Atom mixed[] = {{0, 1, 1}, {1, 0, 1}, {0, -1, 1}, {-1, 0, 1}, {1, 1, 1}};
    const auto lm = lattice_decompose(StepDistribution::from_raw(mixed));
    EXPECT_EQ(lm.d1, 1);
    EXPECT_EQ(lm.d2, 1);
    EXPECT_EQ(lm.a1, 0);
    EXPECT_EQ(lm.a2, 0);

    const Atom even[] = {{2, 0, 1}, {4, 2, 1}, {2, -2, 1}, {-2, 0, 1}};
    const auto le = lattice_decompose(StepDistribution::from_raw(even));
    EXPECT_EQ(le.d1, 2);
    EXPECT_EQ(le.a1, 0);
    EXPECT_EQ(le.d2, 2);
    EXPECT_EQ(le.a2, 0);

    const Atom flat[] = {{1, 0, 1}, {-1, 0, 1}};
    EXPECT_EQ(code_of([&] { lattice_decompose(StepDistribution::from_raw(flat)); }), ErrorCode::DegenerateLattice);
}

TEST(Lattice, Membership) {
    const auto ls = lattice_decompose(singular_steps());
    EXPECT_TRUE(in_lattice_support(ls, 2, {2, 0}));
    EXPECT_FALSE(in_lattice_support(ls, 2, {1, 0}));
    const LatticeStructure trivial{0, 1, 0, 1};
    for (long z = -5; z <= 5; ++z) EXPECT_TRUE(in_lattice_support(trivial, 3, {z, -z + 1}));
}

TEST(Lattice, EveryReachableSumIsInSupport) {
    const Atom raw[] = {{1, -1, 1}, {1, 1, 1}, {-1, 1, 1}, {3, 1, 1}};
    for (const auto& sd : {singular_steps(), StepDistribution::from_raw(raw)}) {
        const auto ls = lattice_decompose(sd);
        std::set<std::pair<long, long>> reach{{0, 0}};
        for (int n = 1; n <= 6; ++n) {
            std::set<std::pair<long, long>> next;
            for (const auto& z : reach)
                for (const auto& a : sd.atoms()) next.insert({z.first + a.dx, z.second + a.dy});
            reach.swap(next);
            for (const auto& z : reach) EXPECT_TRUE(in_lattice_support(ls, n, {z.first, z.second}));
        }
    }
}
