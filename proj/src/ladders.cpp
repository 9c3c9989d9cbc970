#include "quadwalk/ladders.hpp"

#include "quadwalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace quadwalk {

const char* to_string(BoundaryConvention conv) {
    return conv == BoundaryConvention::KillOnNonpositive ? "nonpositive" : "negative";
}

BoundaryConvention parse_convention(const std::string& name) {
    if (name == "nonpositive" || name == "KillOnNonpositive" || name == "le0")
        return BoundaryConvention::KillOnNonpositive;
    if (name == "negative" || name == "KillOnNegative" || name == "lt0")
        return BoundaryConvention::KillOnNegative;
    throw InputError(ErrorCode::BadArgument, "unknown boundary convention: " + name);
}

namespace {

void require_zero_drift(const Law1D& law) {
    if (std::abs(law.mean()) > 1e-10)
        throw InputError(ErrorCode::NonZeroDrift, "vertical drift must be zero");
}

/// First passage of R below `thr` (exit when R <= thr), started at R = 0 and
/// at time 0 never killed. Records the exit value -R.
LadderDist first_passage(const Law1D& law, long thr, const LadderOptions& opts) {
    LadderDist out;
    const long min_step = law.min_step();
    const long max_value = std::max<long>(0, -(thr + min_step));
    out.pmf.assign(static_cast<std::size_t>(max_value + 1), 0.0);

    long lo = 0;
    std::vector<double> alive{1.0};
    std::vector<double> next;
    double dropped = 0.0;
    std::size_t checkpoint = 0;
    auto checkpoints = opts.checkpoints;
    std::sort(checkpoints.begin(), checkpoints.end());

    auto alive_mass = [&] {
        double s = 0.0;
        for (double w : alive) s += w;
        return s;
    };

    long step = 0;
    while (step < opts.max_steps && !alive.empty()) {
        const long new_lo = std::max(lo + min_step, thr + 1);
        const long new_hi = lo + static_cast<long>(alive.size()) - 1 + law.max_step();
        next.assign(static_cast<std::size_t>(std::max<long>(0, new_hi - new_lo + 1)), 0.0);
        for (std::size_t i = 0; i < alive.size(); ++i) {
            const double m = alive[i];
            if (m == 0.0) continue;
            const long p = lo + static_cast<long>(i);
            for (std::size_t k = 0; k < law.probs.size(); ++k) {
                const double w = m * law.probs[k];
                if (w == 0.0) continue;
                const long q = p + law.offset + static_cast<long>(k);
                if (q <= thr)
                    out.pmf[static_cast<std::size_t>(-q)] += w;
                else
                    next[static_cast<std::size_t>(q - new_lo)] += w;
            }
        }
        ++step;

        for (double& w : next)
            if (w != 0.0 && w < opts.drop_below) {
                dropped += w;
                w = 0.0;
            }
        std::size_t first = 0, last = next.size();
        while (first < last && next[first] == 0.0) ++first;
        while (last > first && next[last - 1] == 0.0) --last;
        alive.assign(next.begin() + static_cast<long>(first), next.begin() + static_cast<long>(last));
        lo = new_lo + static_cast<long>(first);

        if (opts.resolve_skip_free && min_step >= -1 && !alive.empty()) {
            // Downward jumps of one unit land exactly on thr.
            out.pmf[static_cast<std::size_t>(-thr)] += alive_mass();
            alive.clear();
        }

        const double residual = alive_mass() + dropped;
        while (checkpoint < checkpoints.size() && checkpoints[checkpoint] == step) {
            out.residual_history.emplace_back(step, residual);
            ++checkpoint;
        }
        if (residual <= opts.tol && step >= 1) break;
    }

    out.steps_used = step;
    out.truncation_error = alive_mass() + dropped;
    out.mean = 0.0;
    for (std::size_t k = 0; k < out.pmf.size(); ++k) out.mean += static_cast<double>(k) * out.pmf[k];
    return out;
}

} // namespace

LadderDist descending_ladder_iteration(const Law1D& vertical, BoundaryConvention conv,
                                       const LadderOptions& opts) {
    LadderOptions raw = opts;
    raw.tol = -1.0;
    const long thr = conv == BoundaryConvention::KillOnNonpositive ? 0 : -1;
    return first_passage(vertical, thr, raw);
}

LadderDist descending_ladder(const Law1D& vertical, BoundaryConvention conv, const LadderOptions& opts) {
    require_zero_drift(vertical);
    const long thr = conv == BoundaryConvention::KillOnNonpositive ? 0 : -1;
    LadderDist ld = first_passage(vertical, thr, opts);
    if (ld.truncation_error > opts.tol)
        throw NumericError("descending ladder: tolerance not reached within max steps", ld.truncation_error);
    return ld;
}

LadderDist ascending_ladder(const Law1D& vertical, const LadderOptions& opts) {
    require_zero_drift(vertical);
    // chi+ of S is the strict descending ladder height of -S.
    LadderDist ld = first_passage(vertical.reflected(), -1, opts);
    if (ld.truncation_error > opts.tol)
        throw NumericError("ascending ladder: tolerance not reached within max steps", ld.truncation_error);
    return ld;
}

double RenewalTable::at(long u) const {
    if (u < 0) return 0.0;
    if (u > U) throw std::out_of_range("renewal table queried past its end");
    return values[static_cast<std::size_t>(u)];
}

std::pair<double, double> RenewalTable::linear_bound() const {
    // The renewal count N is subadditive: N(u + v) <= N(u) + N(v). Writing
    // u = qC + r with 0 <= r < C gives N(u) <= N(r) + (u - r) N(C) / C.
    // V(u) = N(u); H(u) = N(u - 1) <= N(u).
    const long shift = kind == RenewalKind::V ? 0 : 1;
    const long C = U - shift;
    if (C < 1) throw std::out_of_range("renewal table too short for a linear bound");
    auto N = [&](long r) { return values[static_cast<std::size_t>(r + shift)]; };
    const double b = N(C) / static_cast<double>(C);
    double a = 0.0;
    for (long r = 0; r < C; ++r) a = std::max(a, N(r) - b * static_cast<double>(r));
    return {a, b};
}

namespace {

/// Renewal mass u(j) = E #{k >= 0 : chi_1 + ... + chi_k = j}, j = 0..U.
std::vector<double> renewal_mass(const LadderDist& ld, long U) {
    const double p0 = ld.pmf.empty() ? 0.0 : ld.pmf[0];
    const double scale = 1.0 / (1.0 - p0);
    std::vector<double> u(static_cast<std::size_t>(U + 1), 0.0);
    u[0] = scale;
    for (long j = 1; j <= U; ++j) {
        double s = 0.0;
        const long kmax = std::min<long>(j, static_cast<long>(ld.pmf.size()) - 1);
        for (long i = 1; i <= kmax; ++i) s += ld.pmf[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j - i)];
        u[static_cast<std::size_t>(j)] = s * scale;
    }
    return u;
}

} // namespace

RenewalTable renewal_V(const LadderDist& ld, long U) {
    if (U < 0) throw InputError(ErrorCode::BadArgument, "renewal table size must be >= 0");
    double positive = 0.0;
    for (std::size_t k = 1; k < ld.pmf.size(); ++k) positive += ld.pmf[k];
    if (!(ld.mean > 0.0) || positive <= 0.0)
        throw InputError(ErrorCode::ZeroLadderMean, "ladder law has zero mean");
    RenewalTable t{RenewalKind::V, {}, U};
    const auto u = renewal_mass(ld, U);
    t.values.resize(u.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) t.values[j] = (acc += u[j]);
    return t;
}

RenewalTable renewal_H(const LadderDist& ld, long U) {
    if (U < 0) throw InputError(ErrorCode::BadArgument, "renewal table size must be >= 0");
    if (!ld.pmf.empty() && ld.pmf[0] != 0.0)
        throw InputError(ErrorCode::BadArgument, "H needs a strict ladder law (no mass at 0)");
    if (!(ld.mean > 0.0)) throw InputError(ErrorCode::ZeroLadderMean, "ladder law has zero mean");
    RenewalTable t{RenewalKind::H, {}, U};
    const auto u = renewal_mass(ld, U);
    t.values.assign(static_cast<std::size_t>(U + 1), 0.0);
    double acc = 0.0;
    for (long y = 1; y <= U; ++y) t.values[static_cast<std::size_t>(y)] = (acc += u[static_cast<std::size_t>(y - 1)]);
    return t;
}

double kappa(const LadderDist& ld) { return std::sqrt(2.0 / std::numbers::pi) * ld.mean; }

HarmonicDefect harmonic_defect_V(const Law1D& vertical, long x2, BoundaryConvention conv, long horizon,
                                 double band_tol) {
    require_zero_drift(vertical);
    if (horizon < 0) throw InputError(ErrorCode::NegativeHorizon, "horizon must be >= 0");
    const long alive_min = first_alive(conv);
    if (x2 < alive_min) throw InputError(ErrorCode::OutsideRegion, "x2 is not in the surviving range");

    long lo = x2;
    std::vector<double> alive{1.0}, next;
    double exit_sum = 0.0;
    for (long n = 0; n < horizon && !alive.empty(); ++n) {
        const long new_lo = std::max(lo + vertical.min_step(), alive_min);
        const long new_hi = lo + static_cast<long>(alive.size()) - 1 + vertical.max_step();
        next.assign(static_cast<std::size_t>(std::max<long>(0, new_hi - new_lo + 1)), 0.0);
        for (std::size_t i = 0; i < alive.size(); ++i) {
            const long p = lo + static_cast<long>(i);
            for (std::size_t k = 0; k < vertical.probs.size(); ++k) {
                const double w = alive[i] * vertical.probs[k];
                const long q = p + vertical.offset + static_cast<long>(k);
                if (q < alive_min)
                    exit_sum += w * static_cast<double>(q);
                else
                    next[static_cast<std::size_t>(q - new_lo)] += w;
            }
        }
        std::size_t first = 0, last = next.size();
        while (first < last && next[first] < 1e-300) ++first;
        while (last > first && next[last - 1] < 1e-300) --last;
        alive.assign(next.begin() + static_cast<long>(first), next.begin() + static_cast<long>(last));
        lo = new_lo + static_cast<long>(first);
    }
    HarmonicDefect out;
    for (double w : alive) out.alive += w;
    out.value = static_cast<double>(x2) - exit_sum;
    // Exit positions lie in [alive_min + min_step, alive_min - 1].
    const double worst = std::max(std::abs(static_cast<double>(alive_min + vertical.min_step())),
                                  std::abs(static_cast<double>(alive_min - 1)));
    out.band = out.alive * worst;
    if (out.band > band_tol) throw NumericError("harmonic_defect_V: horizon too small for requested band", out.band);
    return out;
}

double one_step_residual(const Law1D& law, const RenewalTable& f, BoundaryConvention conv, long x_max) {
    const long alive_min = first_alive(conv);
    double worst = 0.0;
    for (long x = 1; x <= x_max; ++x) {
        double e = 0.0;
        for (std::size_t k = 0; k < law.probs.size(); ++k) {
            const long y = x + law.offset + static_cast<long>(k);
            if (y >= alive_min) e += law.probs[k] * f.at(y);
        }
        worst = std::max(worst, std::abs(f.at(x) - e));
    }
    return worst;
}

ConventionReport validate_convention(const Law1D& law, const RenewalTable& f, long x_max, double tol) {
    ConventionReport rep;
    const BoundaryConvention both[] = {BoundaryConvention::KillOnNonpositive, BoundaryConvention::KillOnNegative};
    int passing = 0;
    for (int i = 0; i < 2; ++i) {
        const double r = one_step_residual(law, f, both[i], x_max);
        rep.checks[static_cast<std::size_t>(i)] = {both[i], r, r <= tol};
        if (r <= tol) {
            ++passing;
            rep.selected = both[i];
        }
    }
    if (passing != 1)
        throw NumericError(passing == 0 ? "no boundary convention makes the renewal function harmonic"
                                        : "both boundary conventions make the renewal function harmonic",
                           std::min(rep.checks[0].max_residual, rep.checks[1].max_residual));
    return rep;
}

} // namespace quadwalk
