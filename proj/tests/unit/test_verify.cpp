#include "quadwalk/errors.hpp"
#include "quadwalk/output.hpp"
#include "quadwalk/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace quadwalk;

namespace {

const ConditionedWalk& walk() {
    static const ConditionedWalk cw(tilted_singular_steps());
    return cw;
}

} // namespace

TEST(Verify, TailRowsFollowSchedule) {
    VerifyOptions o;
    o.schedule = {64, 0, 16};
    const auto rows = verify("tail", walk(), o);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].n, 0);
    EXPECT_EQ(rows[0].detail.rfind("skipped", 0), 0u);
    EXPECT_EQ(rows[1].n, 16);
    EXPECT_EQ(rows[2].n, 64);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].theorem_id, "tail");
        EXPECT_NEAR(rows[i].ratio, rows[i].measured / rows[i].predicted, 1e-15);
        EXPECT_NEAR(rows[i].measured, survival_prob(walk().steps(), o.x, rows[i].n).value, 1e-15);
        EXPECT_GT(rows[i].ratio, 0.5);
        EXPECT_LT(rows[i].ratio, 2.0);
    }
}

TEST(Verify, EmptyScheduleGivesNoRows) {
    VerifyOptions o;
    for (const char* id : {"tail", "integral", "llt", "line"}) EXPECT_TRUE(verify(id, walk(), o).empty());
}

TEST(Verify, ClosedFormChecksGiveOneRow) {
    VerifyOptions o;
    for (const char* id : {"qbar", "kernel"}) {
        const auto rows = verify(id, walk(), o);
        ASSERT_EQ(rows.size(), 1u);
        EXPECT_NEAR(rows[0].ratio, 1.0, 1e-6) << id;
    }
}

TEST(Verify, IntegralHasOneRowPerWindow) {
    VerifyOptions o;
    o.schedule = {32};
    const auto rows = verify("integral", walk(), o);
    EXPECT_EQ(rows.size(), o.windows.size());
}

TEST(Verify, BoundaryRowsRespectLattice) {
    VerifyOptions o;
    o.schedule = {31, 32};
    const auto rows = verify("boundary-llt", walk(), o);
    ASSERT_EQ(rows.size(), 2u);
    // From (1,1), x2 + S2(n) has the parity of n + 1, so row 1 needs even n.
    EXPECT_EQ(rows[0].detail.rfind("skipped", 0), 0u);
    EXPECT_GT(rows[1].measured, 0.0);
}

TEST(Verify, LltTargetsAreReachable) {
    for (long n : {10L, 101L, 1000L}) {
        const Point y = llt_target(walk(), {1, 1}, n);
        EXPECT_TRUE(in_lattice_support(walk().lattice(), n, {y.x1 - 1, y.x2 - 1}));
        EXPECT_GE(y.x1, 1);
        EXPECT_GE(y.x2, 1);
    }
}

TEST(Verify, Errors) {
    VerifyOptions o;
    o.schedule = {4};
    EXPECT_THROW(verify("nope", walk(), o), InputError);
    o.monte_carlo = true;
    EXPECT_THROW(verify("llt", walk(), o), InputError);
    o.monte_carlo = false;
    o.schedule = {-3};
    EXPECT_THROW(verify("tail", walk(), o), InputError);
}

TEST(Verify, CsvShape) {
    VerifyOptions o;
    o.schedule = {8};
    const auto csv = verify_csv(verify("tail", walk(), o));
    EXPECT_EQ(csv.rfind("theorem_id,n,measured,predicted,ratio,dp_error_bound,detail\n", 0), 0u);
    EXPECT_NE(csv.find("\ntail,8,"), std::string::npos);
}
