#include "quadwalk/harmonic.hpp"

#include "quadwalk/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace quadwalk {

namespace {

/// e^{-g z1} [(a + b z2) r/(1-r) + b M r/(1-r)^2] bounds
/// E[f(z2 + S2(sigma)); sigma < inf] from z for every g in (0, gamma), with
/// r = E e^{-g X1} < 1. The bound is minimized over a grid of g.
struct TailBound {
    std::vector<double> g, r;
    double a = 0.0, b = 0.0, M = 0.0;

    double at_moments(double z1, double mass, double mass_z2) const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double c = r[i] / (1.0 - r[i]);
            best = std::min(best, std::exp(-g[i] * z1) * ((a * mass + b * mass_z2) * c + b * M * mass * c / (1.0 - r[i])));
        }
        return g.empty() ? 0.0 : best;
    }
    double at(double z1, double z2) const { return at_moments(z1, 1.0, z2); }
};

TailBound make_tail_bound(const StepDistribution& sd, const VerticalHarmonic& V) {
    TailBound tb;
    const Law1D h = horizontal_marginal(sd);
    const double gamma = lundberg_root(h);
    if (std::isinf(gamma)) return tb; // no horizontal exit is possible
    for (int i = 1; i < 64; ++i) {
        const double g = gamma * i / 64.0;
        const double r = h.mgf(-g);
        if (r < 1.0) {
            tb.g.push_back(g);
            tb.r.push_back(r);
        }
    }
    tb.a = V.a;
    tb.b = V.b;
    tb.M = std::max(0, sd.max_dy());
    return tb;
}

} // namespace

HarmonicEstimate harmonic_series(const StepDistribution& sd, Point x, ExitSpec spec, const VerticalHarmonic& V,
                                 const HarmonicOptions& opts) {
    if (spec.region != Region::Quadrant)
        throw InputError(ErrorCode::BadArgument, "harmonic series needs the quadrant region");
    HarmonicEstimate est;
    if (!spec.survives(x)) {
        est.converged = true;
        return est;
    }
    const TailBound tb = make_tail_bound(sd, V);
    QuadrantMeasure m(sd, x, spec, opts.dp);
    constexpr double eps = std::numeric_limits<double>::epsilon();

    long next = 0;
    while (true) {
        m.advance(next - m.n());
        double grid_v = 0.0, grid_tail = 0.0, vmax_x2 = static_cast<double>(m.x2_hi());
        m.for_each([&](Point z, double w) {
            grid_v += w * V.f(z.x2);
            grid_tail += w * tb.at(static_cast<double>(z.x1), static_cast<double>(z.x2));
        });
        double leaked_v = 0.0;
        const auto leaked = m.leaked();
        for (std::size_t i = 0; i < leaked.size(); ++i)
            if (leaked[i] != 0.0) leaked_v += leaked[i] * V.f(m.leaked_lo() + static_cast<long>(i));
        if (!leaked.empty())
            vmax_x2 = std::max(vmax_x2, static_cast<double>(m.leaked_lo() + static_cast<long>(leaked.size())));

        const double a_n = grid_v + leaked_v;
        double leak_err = 0.0;
        if (m.barrier())
            leak_err = tb.at_moments(static_cast<double>(*m.barrier() + 1), m.leaked_total(), m.leaked_x2_total());
        const double dropped = m.dropped_mass() * (V.a + V.b * vmax_x2);
        const double round = 8.0 * eps * static_cast<double>(std::max<long>(m.n(), 1)) * a_n;

        est.history.emplace_back(m.n(), a_n);
        est.n_used = m.n();
        est.upper = a_n + dropped + round;
        est.lower = std::max(0.0, a_n - grid_tail - leak_err - round);
        est.value = 0.5 * (est.lower + est.upper);
        if (est.upper - est.lower <= opts.tol) {
            est.converged = true;
            break;
        }
        if (m.alive_mass() == 0.0) {
            est.converged = est.upper - est.lower <= opts.tol;
            break;
        }
        const long n2 = next == 0 ? 1 : 2 * next;
        if (n2 > opts.n_max) break;
        next = n2;
    }
    return est;
}

HarmonicEstimate W_series(const ConditionedWalk& cw, Point x, const HarmonicOptions& opts) {
    auto [a, b] = cw.V_linear_bound();
    VerticalHarmonic V{[&cw](long u) { return cw.V(u); }, a, b};
    return harmonic_series(cw.steps(), x, cw.quadrant(), V, opts);
}

StepDistribution tilted_singular_steps() {
    const Atom raw[] = {{1, -1, 0.5}, {1, 1, 0.25}, {-1, 1, 0.25}};
    return StepDistribution::from_raw(raw);
}

HarmonicEstimate W_star(Point x, const HarmonicOptions& opts) {
    // u is harmonic for the fair +-1 walk killed at <= 0.
    VerticalHarmonic V{[](long u) { return u > 0 ? static_cast<double>(u) : 0.0; }, 0.0, 1.0};
    return harmonic_series(tilted_singular_steps(), x, {Region::Quadrant, BoundaryConvention::KillOnNonpositive}, V,
                           opts);
}

double W_check_harmonic(const StepDistribution& sd, const std::function<double(Point)>& W_eval, Point x,
                        ExitSpec spec) {
    double e = 0.0;
    for (const auto& a : sd.atoms()) {
        const Point y{x.x1 + a.dx, x.x2 + a.dy};
        if (spec.survives(y)) e += a.weight / sd.total_weight() * W_eval(y);
    }
    return std::abs(W_eval(x) - e);
}

double W_hat_survival(const ConditionedWalk& cw, Point x, long n_max, const DpOptions& dp) {
    const ExitSpec spec = cw.quadrant();
    if (!spec.survives(x)) return 0.0;
    const double vx = cw.V(x.x2);
    if (n_max <= 0) return vx;

    const StepDistribution& sd = cw.steps();
    std::optional<long> L;
    if (dp.barrier) L = *dp.barrier < 0 ? auto_barrier(sd, dp.barrier_target) : *dp.barrier;
    const long vmin = first_alive(spec.conv);

    // Sparse measure keyed by (x1, x2).
    std::map<std::pair<long, long>, double> cur{{{x.x1, x.x2}, 1.0}}, nxt;
    double escaped = 0.0;
    if (L && x.x1 > *L) return vx;
    for (long k = 0; k < n_max && !cur.empty(); ++k) {
        nxt.clear();
        for (const auto& [z, w] : cur) {
            const double vz = cw.V(z.second);
            for (const auto& a : sd.atoms()) {
                const long y1 = z.first + a.dx, y2 = z.second + a.dy;
                if (y1 < vmin || y2 < vmin) continue;
                const double wy = w * a.weight / sd.total_weight() * cw.V(y2) / vz;
                if (L && y1 > *L)
                    escaped += wy;
                else
                    nxt[{y1, y2}] += wy;
            }
        }
        cur.swap(nxt);
        for (auto it = cur.begin(); it != cur.end();)
            it = it->second < dp.drop_below ? cur.erase(it) : std::next(it);
    }
    double alive = escaped;
    for (const auto& [z, w] : cur) alive += w;
    return vx * alive;
}

HarmonicEstimate WGrid::at(Point x) {
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find({x.x1, x.x2});
        if (it != memo_.end()) return it->second;
    }
    HarmonicEstimate est = W_series(cw_, x, opts_);
    std::lock_guard lock(mu_);
    return memo_.emplace(std::make_pair(x.x1, x.x2), std::move(est)).first->second;
}

void WGrid::fill(Point lo, Point hi, unsigned threads) {
    std::vector<Point> todo;
    for (long a = lo.x1; a <= hi.x1; ++a)
        for (long b = lo.x2; b <= hi.x2; ++b) todo.push_back({a, b});
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < todo.size();) at(todo[i]);
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

std::string WGrid::to_csv() const {
    std::lock_guard lock(mu_);
    std::string out = "x1,x2,lower,value,upper,n_used\n";
    for (const auto& [k, e] : memo_)
        out += fmt::format("{},{},{},{},{},{}\n", k.first, k.second, e.lower, e.value, e.upper, e.n_used);
    return out;
}

std::size_t WGrid::size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
}

} // namespace quadwalk
