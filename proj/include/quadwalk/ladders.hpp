#pragma once

#include "quadwalk/walk_model.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace quadwalk {

/// Which coordinate values count as "exited".
///   KillOnNonpositive: exit when the coordinate is <= 0 (survivors are >= 1)
///   KillOnNegative:    exit when the coordinate is < 0  (survivors are >= 0)
enum class BoundaryConvention { KillOnNonpositive, KillOnNegative };

const char* to_string(BoundaryConvention conv);
BoundaryConvention parse_convention(const std::string& name);

/// Smallest surviving coordinate value under `conv`.
inline long first_alive(BoundaryConvention conv) {
    return conv == BoundaryConvention::KillOnNonpositive ? 1 : 0;
}

/// Ladder height law. pmf[k] = P(chi = k).
struct LadderDist {
    std::vector<double> pmf;
    double truncation_error = 0.0;
    double mean = 0.0;
    long steps_used = 0;
    /// (iteration count, unresolved mass) at the requested checkpoints.
    std::vector<std::pair<long, double>> residual_history;
};

struct LadderOptions {
    double tol = 1e-10;
    long max_steps = 100000;
    /// Alive weights below this are dropped and counted as unresolved.
    double drop_below = 1e-30;
    /// When the exiting side is skip-free (jumps of at most one unit across
    /// the boundary) every surviving path exits at a known height; resolve
    /// that mass at once instead of iterating.
    bool resolve_skip_free = true;
    std::vector<long> checkpoints;
};

/// Raw absorbing iteration for the descending ladder: runs exactly
/// `opts.max_steps` steps (or until no mass is alive) without enforcing tol.
/// KillOnNonpositive gives the weak ladder height, KillOnNegative the strict.
LadderDist descending_ladder_iteration(const Law1D& vertical, BoundaryConvention conv,
                                       const LadderOptions& opts);

/// Weak (KillOnNonpositive) or strict (KillOnNegative) descending ladder
/// height of a zero-drift walk. Throws InputError(NonZeroDrift) and
/// NumericError when tol is not met within opts.max_steps.
LadderDist descending_ladder(const Law1D& vertical, BoundaryConvention conv,
                             const LadderOptions& opts = {});

/// Strict ascending ladder height chi+ = S(tau+), tau+ = inf{n >= 1 : S(n) > 0}.
LadderDist ascending_ladder(const Law1D& vertical, const LadderOptions& opts = {});

enum class RenewalKind { V, H };

struct RenewalTable {
    RenewalKind kind = RenewalKind::V;
    std::vector<double> values; ///< values[u] for u = 0..U
    long U = 0;

    /// 0 for u < 0; throws std::out_of_range past U.
    double at(long u) const;
    /// Coefficients (a, b) with value(u) <= a + b u for every u >= 0,
    /// from subadditivity of the renewal count.
    std::pair<double, double> linear_bound() const;
};

/// V(u) = 1{u>=0} + sum_k P(chi_1 + ... + chi_k <= u), tabulated for u = 0..U.
/// Mass at 0 is resummed geometrically. Throws InputError(ZeroLadderMean).
RenewalTable renewal_V(const LadderDist& ld, long U);

/// H(u) = 1{u>0} + sum_k P(chi_1 + ... + chi_k < u) for a strict ladder law.
RenewalTable renewal_H(const LadderDist& ld, long U);

double kappa(const LadderDist& ld);

struct HarmonicDefect {
    double value = 0.0; ///< x2 - E[x2 + S2(tau); tau <= horizon]
    double band = 0.0;  ///< bound on the contribution of still-alive paths
    double alive = 0.0;
};

/// Evaluates the standard harmonic function x2 - E[x2 + S2(tau_x)] by
/// running the killed walk for `horizon` steps. Throws NumericError when the
/// resulting band exceeds `band_tol`.
HarmonicDefect harmonic_defect_V(const Law1D& vertical, long x2, BoundaryConvention conv,
                                 long horizon, double band_tol = 1e-9);

/// Largest |f(x) - E[f(x + X); x + X survives]| over x = 1..x_max.
double one_step_residual(const Law1D& law, const RenewalTable& f, BoundaryConvention conv, long x_max);

struct ConventionCheck {
    BoundaryConvention convention;
    double max_residual = 0.0;
    bool passes = false;
};

struct ConventionReport {
    std::array<ConventionCheck, 2> checks;
    BoundaryConvention selected = BoundaryConvention::KillOnNonpositive;
};

/// Tests under which kill rule the table `f` is harmonic for `law` on
/// x = 1..x_max. Throws NumericError unless exactly one convention passes.
ConventionReport validate_convention(const Law1D& law, const RenewalTable& f, long x_max = 50,
                                     double tol = 1e-9);

} // namespace quadwalk
