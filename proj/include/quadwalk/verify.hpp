#pragma once

#include "quadwalk/asymptotics.hpp"
#include "quadwalk/harmonic.hpp"
#include "quadwalk/pipeline.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quadwalk {

struct VerifyRow {
    std::string theorem_id;
    long n = 0;
    double measured = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    double dp_error_bound = 0.0;
    std::string detail; ///< evaluation point or window, or why the row was skipped
};

struct VerifyOptions {
    Point x{1, 1};
    std::vector<long> schedule;
    /// Row used by boundary-llt and line.
    long y2 = 1;
    /// Lower-left corners u of the unit windows u + [0,1)^2 for `integral`.
    std::vector<Vec2> windows{{-1.0, 0.0}, {0.0, 0.0}, {-1.0, 1.0}, {0.0, 1.0}};
    /// Weights below this are dropped from the unbarriered 2-D fields; the
    /// dropped total is reported as dp_error_bound.
    double drop_below = 1e-25;
    bool monte_carlo = false;
    long mc_reps = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    HarmonicOptions harmonic;
};

/// tail, integral, llt, llt-half, boundary-llt, line, qbar, kernel, plus the
/// diagnostics boundary-llt-reversal and line-reversal.
const std::vector<std::string>& theorem_ids();

/// One row per schedule point (per window for `integral`). Measured values
/// are exact DP probabilities; predicted values are the leading terms.
std::vector<VerifyRow> verify(const std::string& theorem_id, const ConditionedWalk& cw, const VerifyOptions& opts);

/// Lattice point of D_n(x) nearest to (n mu1, sqrt(n)).
Point llt_target(const ConditionedWalk& cw, Point x, long n);
/// Lattice point of D_n(x) on row y2 nearest to n mu1; nullopt if the row
/// is not reachable at time n.
std::optional<Point> boundary_target(const ConditionedWalk& cw, Point x, long y2, long n);

} // namespace quadwalk
