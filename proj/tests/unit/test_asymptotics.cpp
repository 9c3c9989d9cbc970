#include "quadwalk/asymptotics.hpp"
#include "quadwalk/errors.hpp"
#include "quadwalk/harmonic.hpp"
#include "quadwalk/pipeline.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace quadwalk;

namespace {

const GaussParams tilted{0.5, 0.75, 1.0, -0.5};
const GaussParams plain{0.0, 1.0, 1.0, 0.0};
const GaussParams skewed{0.3, 2.0, 0.5, 0.4};

} // namespace

TEST(GaussParams, FromMoments) {
    const auto gp = GaussParams::from_moments(compute_moments(tilted_singular_steps()));
    EXPECT_NEAR(gp.mu1, 0.5, 1e-15);
    EXPECT_NEAR(gp.D(), 0.5, 1e-15);
    const Atom line[] = {{1, 1, 1}, {-1, -1, 1}};
    EXPECT_THROW(GaussParams::from_moments(compute_moments(StepDistribution::from_raw(line))), InputError);
}

TEST(DensityP, IntegratesToOne) {
    for (const auto& gp : {tilted, plain, skewed}) EXPECT_NEAR(integrate_p_total(gp), 1.0, 1e-8);
}

TEST(DensityP, NonnegativeAndZeroBelowAxis) {
    for (double a = -3; a <= 3; a += 0.5)
        for (double b = -1; b <= 3; b += 0.25) {
            const double p = density_p({a, b}, tilted);
            EXPECT_GE(p, 0.0);
            if (b <= 0) EXPECT_EQ(p, 0.0);
        }
}

TEST(DensityP, LimitOfKilledKernelFromNearTheAxis) {
    // Condition on survival from (0, eps): normaliser is P(sigma_2 B_1 > -eps ... ) = erf(eps / (sigma_2 sqrt 2)).
    for (const auto& gp : {tilted, skewed}) {
        const double eps = 1e-6;
        const double norm = std::erf(eps / (std::sqrt(gp.s22) * std::sqrt(2.0)));
        for (Vec2 y : {Vec2{0.2, 0.7}, Vec2{-1.0, 1.5}, Vec2{1.3, 0.1}}) {
            const double k = bm_kernel(1.0, {0.0, eps}, y, {0.0, 0.0}, gp) / norm;
            EXPECT_NEAR(k / density_p(y, gp), 1.0, 1e-5);
        }
    }
}

TEST(Qbar, ClosedFormMatchesConvolution) {
    for (const auto& gp : {tilted, plain}) {
        for (double y1 : {-3.0, -1.0, 0.0, 1.0, 3.0}) EXPECT_NEAR(qbar(y1, gp), qbar_convolution(y1, gp), 1e-8) << y1;
    }
}

TEST(Qbar, Symmetric) {
    for (double y1 : {0.1, 0.9, 2.5}) EXPECT_DOUBLE_EQ(qbar(y1, skewed), qbar(-y1, skewed));
}

TEST(Kernel, ReflectionConstructionAtZeroCorrelation) {
    const GaussParams gp{0.0, 1.7, 0.6, 0.0};
    const Vec2 mu{0.5, 0.0};
    for (double t : {0.3, 1.0, 4.0})
        for (Vec2 x : {Vec2{0.0, 0.5}, Vec2{1.0, 2.0}})
            for (Vec2 y : {Vec2{0.4, 0.2}, Vec2{-1.0, 3.0}, Vec2{2.5, 1.1}})
                EXPECT_NEAR(bm_kernel(t, x, y, mu, gp), bm_kernel_reflection(t, x, y, mu, gp), 1e-12);
}

TEST(Kernel, ChapmanKolmogorov) {
    const Vec2 mu{0.0, 0.0};
    for (const auto& gp : {tilted, plain}) {
        const Vec2 x{0.0, 0.8}, y{0.5, 1.2};
        const double lhs = chapman_kolmogorov_integral(0.6, 0.9, x, y, mu, gp);
        EXPECT_NEAR(lhs, bm_kernel(1.5, x, y, mu, gp), 1e-6);
    }
}

TEST(Kernel, BoundedByFreeKernel) {
    for (double t : {0.5, 2.0})
        for (Vec2 y : {Vec2{0.0, 0.1}, Vec2{1.0, 1.0}, Vec2{-2.0, 3.0}}) {
            const Vec2 x{0.3, 1.0}, mu{0.5, 0.0};
            const double k = bm_kernel(t, x, y, mu, tilted);
            EXPECT_GE(k, 0.0);
            EXPECT_LE(k, free_kernel(t, x, y, mu, tilted));
        }
    EXPECT_EQ(bm_kernel(1.0, {0.0, 1.0}, {0.0, -1.0}, {0.0, 0.0}, tilted), 0.0);
    EXPECT_THROW(bm_kernel(0.0, {0.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, tilted), InputError);
}

TEST(IntQ, ClosedFormMatchesQuadrature) {
    for (const auto& gp : {tilted, plain, skewed}) {
        AsymptoticConstants c;
        c.kappa = 0.4;
        c.kappa_prime = 0.7;
        c.int_q = int_q(gp, c.kappa, c.kappa_prime);
        EXPECT_NEAR(int_q_quadrature(gp, c), c.int_q, 1e-10);
    }
}

TEST(Constants, TiltedWalk) {
    const ConditionedWalk cw(tilted_singular_steps());
    const auto c = cw.constants();
    EXPECT_NEAR(c.kappa, c.kappa_prime, 1e-15);
    EXPECT_NEAR(c.kappa_plus, 2.0 * c.kappa, 1e-12);
    EXPECT_NEAR(c.int_q, c.kappa * c.kappa * std::sqrt(std::numbers::pi) / 2.0, 1e-15);
}

TEST(Predictors, ScalingInN) {
    const LatticeStructure ls{1, 2, 1, 2};
    AsymptoticConstants c{0.4, 0.4, int_q(tilted, 0.4, 0.4), 0.8};
    EXPECT_NEAR(predict_tail(100, 0.4, 0.75) / predict_tail(400, 0.4, 0.75), 2.0, 1e-14);
    EXPECT_NEAR(predict_line(100, ls, c, 1.0, 0.75) / predict_line(400, ls, c, 1.0, 0.75), 8.0, 1e-12);

    // At the same rescaled point the local limits scale as n^{-3/2} and n^{-2}.
    const Point y100{50, 10}, y400{200, 20};
    EXPECT_NEAR(predict_llt(y100, 100, ls, 0.4, 0.75, tilted) / predict_llt(y400, 400, ls, 0.4, 0.75, tilted), 8.0,
                1e-12);
    EXPECT_NEAR(predict_boundary_llt(60, 100, ls, c, 1.0, 0.75, tilted) /
                    predict_boundary_llt(220, 400, ls, c, 1.0, 0.75, tilted),
                16.0, 1e-12);
    EXPECT_NEAR(predict_integral(100, {0, 0}, {1, 1}, 0.4, 0.75, tilted) /
                    predict_integral(400, {0, 0}, {1, 1}, 0.4, 0.75, tilted),
                2.0, 1e-12);
    EXPECT_EQ(predict_llt({50, 0}, 100, ls, 0.4, 0.75, tilted), 0.0);
}

TEST(Predictors, ReversalLineIsSumOfLocalTerms) {
    const LatticeStructure ls{1, 2, 1, 2};
    AsymptoticConstants c{0.4, 0.4, int_q(tilted, 0.4, 0.4), 0.8};
    const long n = 4000;
    double s = 0.0;
    for (long y1 = 1; y1 < 2 * n; y1 += 2) s += predict_boundary_llt_reversal(y1, n, ls, c, 1.0, 0.75, tilted);
    EXPECT_NEAR(s / predict_line_reversal(n, ls, c, 1.0, 0.75, tilted), 1.0, 1e-6);
}
