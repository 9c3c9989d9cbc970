#pragma once

#include "quadwalk/exact_dp.hpp"
#include "quadwalk/pipeline.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace quadwalk {

struct HarmonicEstimate {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    long n_used = 0;
    bool converged = false;
    /// (n, E[V(x2 + S2(n)); T_x > n]) at each evaluated n.
    std::vector<std::pair<long, double>> history;

    double width() const { return upper - lower; }
};

struct HarmonicOptions {
    long n_max = 1L << 14;
    double tol = 1e-9;
    /// Wider barrier than the survival default: the leak term enters with
    /// the linear growth of V.
    DpOptions dp{-1, 1e-24};
};

/// A function of x2 that is harmonic for the vertically killed walk, with a
/// linear envelope f(u) <= a + b u.
struct VerticalHarmonic {
    std::function<double(long)> f;
    double a = 0.0;
    double b = 0.0;
};

/// Bracket for f(x2) - E[f(x2 + S2(sigma)); tau > sigma, sigma < inf]
/// built from the nonincreasing sequence E[f(x2 + S2(n)); T_x > n] at n = 0,
/// 1, 2, 4, ... The lower end subtracts a Chernoff tail bound for the mass
/// that can still exit horizontally, the leak correction and a roundoff budget.
HarmonicEstimate harmonic_series(const StepDistribution& sd, Point x, ExitSpec spec, const VerticalHarmonic& V,
                                 const HarmonicOptions& opts = {});

/// W(x) for the pipeline's walk.
HarmonicEstimate W_series(const ConditionedWalk& cw, Point x, const HarmonicOptions& opts = {});

/// W*(x) for the tilted singular walk with V(u) = u.
HarmonicEstimate W_star(Point x, const HarmonicOptions& opts = {});

/// Tilted singular step law (pmf 1/2, 1/4, 1/4 on (1,-1), (1,1), (-1,1)).
StepDistribution tilted_singular_steps();

/// |W(x) - E[W(x + X); x + X survives]|.
double W_check_harmonic(const StepDistribution& sd, const std::function<double(Point)>& W_eval, Point x,
                        ExitSpec spec);

/// V(x2) P^(sigma_x > n_max) for the walk h-transformed by V and restricted
/// to the upper half-plane. Uses the same barrier as the quadrant DP: mass
/// beyond it is counted as surviving.
double W_hat_survival(const ConditionedWalk& cw, Point x, long n_max, const DpOptions& dp = {});

/// Memoized W evaluations; safe for concurrent use.
class WGrid {
public:
    WGrid(const ConditionedWalk& cw, HarmonicOptions opts = {}) : cw_(cw), opts_(std::move(opts)) {}

    HarmonicEstimate at(Point x);
    /// Evaluates all x in [lo1, hi1] x [lo2, hi2] with `threads` workers.
    void fill(Point lo, Point hi, unsigned threads = 1);
    /// CSV with header x1,x2,lower,value,upper,n_used (sorted by x1, x2).
    std::string to_csv() const;
    std::size_t size() const;

private:
    const ConditionedWalk& cw_;
    HarmonicOptions opts_;
    mutable std::mutex mu_;
    std::map<std::pair<long, long>, HarmonicEstimate> memo_;
};

} // namespace quadwalk
