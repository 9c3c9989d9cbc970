#pragma once

#include "quadwalk/exact_dp.hpp"
#include "quadwalk/walk_model.hpp"

#include <cstdint>

namespace quadwalk {

struct McEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    long reps = 0;
    std::uint64_t seed = 0;
    long hits = 0;
};

struct McOptions {
    unsigned threads = 1;
    ExitSpec spec;
};

/// Fraction of `reps` simulated paths with T_x > n. Path i draws its steps
/// from a stream keyed by (seed, i), so the result does not depend on how
/// paths are split across threads.
McEstimate simulate_survival(const StepDistribution& sd, Point x, long n, long reps, std::uint64_t seed,
                             const McOptions& opts = {});

/// Fraction of paths that survive n steps and end at y.
McEstimate simulate_local(const StepDistribution& sd, Point x, Point y, long n, long reps, std::uint64_t seed,
                          const McOptions& opts = {});

/// Default worker count: QUADWALK_THREADS if set and positive, else 1.
unsigned default_threads();

} // namespace quadwalk
