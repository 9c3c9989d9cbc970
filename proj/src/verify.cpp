#include "quadwalk/verify.hpp"

#include "quadwalk/errors.hpp"
#include "quadwalk/montecarlo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadwalk {

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids{"tail",   "integral", "llt",   "llt-half",
                                              "boundary-llt", "line", "qbar", "kernel",
                                              "boundary-llt-reversal", "line-reversal"};
    return ids;
}

namespace {

long floor_mod(long a, long d) {
    const long r = a % d;
    return r < 0 ? r + d : r;
}

/// Integer nearest to v with v = base (mod d).
long nearest_in_class(double v, long base, long d) {
    const long f = static_cast<long>(std::floor(v));
    long best = f;
    double best_dist = std::numeric_limits<double>::infinity();
    for (long c = f - d; c <= f + d + 1; ++c) {
        const double dist = std::abs(static_cast<double>(c) - v);
        if (floor_mod(c - base, d) == 0 && dist < best_dist) {
            best = c;
            best_dist = dist;
        }
    }
    return best;
}

VerifyRow make_row(const std::string& id, long n, double measured, double predicted, double err, std::string detail) {
    return {id, n, measured, predicted, predicted != 0.0 ? measured / predicted : 0.0, err, std::move(detail)};
}

std::vector<long> sorted_schedule(const VerifyOptions& opts) {
    auto s = opts.schedule;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (long n : s)
        if (n < 0) throw InputError(ErrorCode::NegativeHorizon, "schedule entries must be >= 0");
    return s;
}

} // namespace

Point llt_target(const ConditionedWalk& cw, Point x, long n) {
    const auto& ls = cw.lattice();
    const double nn = static_cast<double>(n);
    const long vmin = first_alive(cw.convention());
    long y1 = nearest_in_class(nn * cw.gauss().mu1, x.x1 + ls.a1 * n, ls.d1);
    long y2 = nearest_in_class(std::sqrt(nn), x.x2 + ls.a2 * n, ls.d2);
    while (y1 < vmin) y1 += ls.d1;
    while (y2 < vmin) y2 += ls.d2;
    return {y1, y2};
}

std::optional<Point> boundary_target(const ConditionedWalk& cw, Point x, long y2, long n) {
    const auto& ls = cw.lattice();
    if (floor_mod(y2 - x.x2 - ls.a2 * n, ls.d2) != 0) return std::nullopt;
    long y1 = nearest_in_class(static_cast<double>(n) * cw.gauss().mu1, x.x1 + ls.a1 * n, ls.d1);
    while (y1 < first_alive(cw.convention())) y1 += ls.d1;
    return Point{y1, y2};
}

std::vector<VerifyRow> verify(const std::string& id, const ConditionedWalk& cw, const VerifyOptions& opts) {
    if (std::find(theorem_ids().begin(), theorem_ids().end(), id) == theorem_ids().end())
        throw InputError(ErrorCode::BadArgument, "unknown theorem id: " + id);
    if (opts.monte_carlo && id != "tail")
        throw InputError(ErrorCode::BadArgument, "Monte Carlo measurement is available for tail only");

    std::vector<VerifyRow> rows;
    const auto& gp = cw.gauss();
    const auto& ls = cw.lattice();
    const auto consts = cw.constants();

    if (id == "qbar") {
        rows.push_back(make_row(id, 0, qbar_convolution(0.0, gp), qbar(0.0, gp), 0.0, "y1=0"));
        return rows;
    }
    if (id == "kernel") {
        const Vec2 x{0.0, 1.0}, y{0.5 * gp.mu1 + 0.3, 1.2}, mu{gp.mu1, 0.0};
        rows.push_back(make_row(id, 0, chapman_kolmogorov_integral(0.5, 0.5, x, y, mu, gp),
                                bm_kernel(1.0, x, y, mu, gp), 0.0, "s=0.5,t=0.5"));
        return rows;
    }

    const auto schedule = sorted_schedule(opts);
    if (schedule.empty()) return rows;
    const Point x = opts.x;
    const double W = id == "llt-half" ? 0.0 : W_series(cw, x, opts.harmonic).value;

    if (id == "tail") {
        if (opts.monte_carlo) {
            for (long n : schedule) {
                const auto est = simulate_survival(cw.steps(), x, n, opts.mc_reps, opts.seed,
                                                   {opts.threads, cw.quadrant()});
                if (n == 0) {
                    rows.push_back(make_row(id, n, est.mean, 0.0, est.half_width_95, "skipped: n=0"));
                    continue;
                }
                rows.push_back(make_row(id, n, est.mean, predict_tail(n, cw.kappa(), W), est.half_width_95,
                                        fmt::format("mc reps={} seed={}", est.reps, est.seed)));
            }
            return rows;
        }
        QuadrantMeasure m(cw.steps(), x, cw.quadrant());
        run_schedule(m, schedule, [&](const QuadrantMeasure& q) {
            if (q.n() == 0) {
                rows.push_back(make_row(id, 0, q.alive_mass(), 0.0, q.error_bound(), "skipped: n=0"));
                return;
            }
            rows.push_back(make_row(id, q.n(), q.alive_mass(), predict_tail(q.n(), cw.kappa(), W), q.error_bound(), ""));
        });
        return rows;
    }

    DpOptions dp;
    dp.barrier.reset();
    dp.drop_below = opts.drop_below;
    const ExitSpec spec = id == "llt-half" ? ExitSpec{Region::UpperHalfPlane, cw.convention()} : cw.quadrant();
    QuadrantMeasure m(cw.steps(), x, spec, dp);

    run_schedule(m, schedule, [&](const QuadrantMeasure& q) {
        const long n = q.n();
        const double err = q.dropped_mass();
        if (n == 0) {
            rows.push_back(make_row(id, 0, 0.0, 0.0, err, "skipped: n=0"));
            return;
        }
        const double nn = static_cast<double>(n), rn = std::sqrt(nn);
        if (id == "integral") {
            for (const auto& u : opts.windows) {
                double mass = 0.0;
                q.for_each([&](Point z, double w) {
                    const double v1 = (static_cast<double>(z.x1) - nn * gp.mu1) / rn;
                    const double v2 = static_cast<double>(z.x2) / rn;
                    if (v1 >= u[0] && v1 < u[0] + 1.0 && v2 >= u[1] && v2 < u[1] + 1.0) mass += w;
                });
                rows.push_back(make_row(id, n, mass,
                                        predict_integral(n, u, {u[0] + 1.0, u[1] + 1.0}, cw.kappa(), W, gp), err,
                                        fmt::format("u={},{}", u[0], u[1])));
            }
        } else if (id == "llt" || id == "llt-half") {
            const Point y = llt_target(cw, x, n);
            const double pred = id == "llt" ? predict_llt(y, n, ls, cw.kappa(), W, gp)
                                            : predict_llt_halfplane(y, n, ls, cw.kappa(), cw.V(x.x2), gp);
            rows.push_back(make_row(id, n, q.weight(y), pred, err, fmt::format("y={},{}", y.x1, y.x2)));
        } else if (id == "boundary-llt" || id == "boundary-llt-reversal") {
            const auto y = boundary_target(cw, x, opts.y2, n);
            if (!y) {
                rows.push_back(make_row(id, n, 0.0, 0.0, err, fmt::format("skipped: row y2={} not in D_n(x)", opts.y2)));
                return;
            }
            const double H = cw.H(opts.y2);
            const double pred = id == "boundary-llt" ? predict_boundary_llt(y->x1, n, ls, consts, H, W, gp)
                                                     : predict_boundary_llt_reversal(y->x1, n, ls, consts, H, W, gp);
            rows.push_back(make_row(id, n, q.weight(*y), pred, err, fmt::format("y={},{}", y->x1, y->x2)));
        } else {
            double line = 0.0;
            if (!q.empty())
                for (long y1 = q.x1_lo(); y1 <= q.x1_hi(); ++y1) line += q.weight({y1, opts.y2});
            const double H = cw.H(opts.y2);
            const double pred = id == "line" ? predict_line(n, ls, consts, H, W)
                                             : predict_line_reversal(n, ls, consts, H, W, gp);
            rows.push_back(make_row(id, n, line, pred, err, fmt::format("y2={}", opts.y2)));
        }
    });
    return rows;
}

} // namespace quadwalk
