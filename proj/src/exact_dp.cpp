#include "quadwalk/exact_dp.hpp"

#include "quadwalk/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadwalk {

const char* to_string(Region region) {
    switch (region) {
    case Region::Quadrant: return "quadrant";
    case Region::UpperHalfPlane: return "upper";
    case Region::RightHalfPlane: return "right";
    }
    return "?";
}

double lundberg_root(const Law1D& horizontal) {
    if (!(horizontal.mean() > 0.0))
        throw InputError(ErrorCode::BadArgument, "barrier needs a positive horizontal drift");
    if (horizontal.min_step() >= 0) return std::numeric_limits<double>::infinity();
    auto g = [&](double gamma) { return horizontal.mgf(-gamma) - 1.0; };
    // g(0) = 0, g'(0) < 0, g convex and eventually positive.
    double hi = 1.0;
    while (g(hi) < 0.0) hi *= 2.0;
    double lo = hi / 2.0;
    while (g(lo) >= 0.0 && lo > 1e-12) lo /= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

long auto_barrier(const StepDistribution& sd, double target) {
    const double gamma = lundberg_root(horizontal_marginal(sd));
    const long reach = std::max(std::abs(sd.min_dx()), std::abs(sd.max_dx()));
    if (std::isinf(gamma)) return reach;
    const long L = static_cast<long>(std::ceil(-std::log(target) / gamma)) - 1;
    return std::max(L, reach);
}

QuadrantMeasure::QuadrantMeasure(const StepDistribution& sd, Point start, ExitSpec spec, const DpOptions& opts)
    : vertical_(vertical_marginal(sd)), spec_(spec), drop_below_(opts.drop_below),
      min_dx_(sd.min_dx()), max_dx_(sd.max_dx()), min_dy_(sd.min_dy()), max_dy_(sd.max_dy()) {
    for (const auto& a : sd.atoms()) atoms_.push_back({a.dx, a.dy, a.weight / sd.total_weight()});
    if (!spec.survives(start)) throw InputError(ErrorCode::OutsideRegion, "start point is outside the survival region");

    if (opts.barrier && spec.kills_horizontal()) {
        const long reach = std::max(std::abs(min_dx_), std::abs(max_dx_));
        long L = *opts.barrier;
        if (L < 0) L = auto_barrier(sd, opts.barrier_target);
        if (L < reach) throw InputError(ErrorCode::BarrierTooSmall, "barrier is smaller than the largest horizontal jump");
        barrier_ = L;
        const double gamma = lundberg_root(horizontal_marginal(sd));
        leak_return_ = std::isinf(gamma) ? 0.0 : std::exp(-gamma * static_cast<double>(L + 1));
    }

    x1_lo_ = start.x1;
    x2_lo_ = start.x2;
    width_ = height_ = 1;
    w_.assign(1, 1.0);
    migrate();
}

void QuadrantMeasure::advance(long steps) {
    for (long i = 0; i < steps; ++i) step();
}

void QuadrantMeasure::step() {
    step_leaked();
    step_grid();
    migrate();
    prune();
    ++n_;
}

void QuadrantMeasure::step_grid() {
    if (empty()) return;
    const long vmin = first_alive(spec_.conv);
    long nlo1 = x1_lo_ + min_dx_;
    const long nhi1 = x1_hi() + max_dx_;
    if (spec_.kills_horizontal()) nlo1 = std::max(nlo1, vmin);
    long nlo2 = x2_lo_ + min_dy_;
    const long nhi2 = x2_hi() + max_dy_;
    if (spec_.kills_vertical()) nlo2 = std::max(nlo2, vmin);
    const long nw = std::max<long>(0, nhi1 - nlo1 + 1);
    const long nh = std::max<long>(0, nhi2 - nlo2 + 1);

    std::vector<double> rowsum(static_cast<std::size_t>(height_), 0.0);
    for (long r = 0; r < height_; ++r) {
        const double* src = w_.data() + r * width_;
        double s = 0.0;
        for (long j = 0; j < width_; ++j) s += src[j];
        rowsum[static_cast<std::size_t>(r)] = s;
    }

    scratch_.assign(static_cast<std::size_t>(nw * nh), 0.0);
    for (const auto& a : atoms_) {
        const double p = a.weight;
        const long j_start = std::max<long>(0, nlo1 - a.dx - x1_lo_);
        const long col_shift = x1_lo_ + a.dx - nlo1;
        for (long r = 0; r < height_; ++r) {
            const double rs = rowsum[static_cast<std::size_t>(r)];
            if (rs == 0.0) continue;
            const long t2 = x2_lo_ + r + a.dy;
            const double* src = w_.data() + r * width_;
            if (t2 < nlo2) {
                killed_ += p * rs;
                continue;
            }
            double lost = 0.0;
            for (long j = 0; j < std::min(j_start, width_); ++j) lost += src[j];
            killed_ += p * lost;
            double* dst = scratch_.data() + (t2 - nlo2) * nw;
            for (long j = j_start; j < width_; ++j) dst[j + col_shift] += p * src[j];
        }
    }
    w_.swap(scratch_);
    x1_lo_ = nlo1;
    x2_lo_ = nlo2;
    width_ = nw;
    height_ = nh;
    if (width_ == 0 || height_ == 0) {
        width_ = height_ = 0;
        w_.clear();
    }
}

void QuadrantMeasure::step_leaked() {
    if (leaked_.empty()) return;
    const long vmin = first_alive(spec_.conv);
    long nlo = leaked_lo_ + vertical_.min_step();
    const long nhi = leaked_lo_ + static_cast<long>(leaked_.size()) - 1 + vertical_.max_step();
    if (spec_.kills_vertical()) nlo = std::max(nlo, vmin);
    leaked_scratch_.assign(static_cast<std::size_t>(std::max<long>(0, nhi - nlo + 1)), 0.0);
    for (std::size_t i = 0; i < leaked_.size(); ++i) {
        const double m = leaked_[i];
        if (m == 0.0) continue;
        const long p = leaked_lo_ + static_cast<long>(i);
        for (std::size_t k = 0; k < vertical_.probs.size(); ++k) {
            const long q = p + vertical_.offset + static_cast<long>(k);
            const double w = m * vertical_.probs[k];
            if (q < nlo)
                killed_ += w;
            else
                leaked_scratch_[static_cast<std::size_t>(q - nlo)] += w;
        }
    }
    leaked_.swap(leaked_scratch_);
    leaked_lo_ = nlo;
}

void QuadrantMeasure::migrate() {
    if (!barrier_ || empty() || x1_hi() <= *barrier_) return;
    const long L = *barrier_;
    const long keep = std::max<long>(0, L - x1_lo_ + 1);

    const long lo = x2_lo_, hi = x2_hi();
    if (leaked_.empty()) {
        leaked_lo_ = lo;
        leaked_.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    } else {
        const long cur_hi = leaked_lo_ + static_cast<long>(leaked_.size()) - 1;
        const long new_lo = std::min(lo, leaked_lo_);
        const long new_hi = std::max(hi, cur_hi);
        if (new_lo != leaked_lo_ || new_hi != cur_hi) {
            std::vector<double> grown(static_cast<std::size_t>(new_hi - new_lo + 1), 0.0);
            std::copy(leaked_.begin(), leaked_.end(), grown.begin() + (leaked_lo_ - new_lo));
            leaked_.swap(grown);
            leaked_lo_ = new_lo;
        }
    }
    for (long r = 0; r < height_; ++r) {
        double* row = w_.data() + r * width_;
        double s = 0.0;
        for (long j = keep; j < width_; ++j) s += row[j];
        leaked_[static_cast<std::size_t>(x2_lo_ + r - leaked_lo_)] += s;
        leaked_total_ += s;
        leaked_x2_total_ += s * static_cast<double>(x2_lo_ + r);
    }
    if (keep == 0) {
        width_ = height_ = 0;
        w_.clear();
        return;
    }
    std::vector<double> kept(static_cast<std::size_t>(keep * height_));
    for (long r = 0; r < height_; ++r)
        std::copy(w_.begin() + r * width_, w_.begin() + r * width_ + keep, kept.begin() + r * keep);
    w_.swap(kept);
    width_ = keep;
}

void QuadrantMeasure::prune() {
    if (!empty()) {
        long rmin = height_, rmax = -1, cmin = width_, cmax = -1;
        for (long r = 0; r < height_; ++r) {
            double* row = w_.data() + r * width_;
            for (long j = 0; j < width_; ++j) {
                double& v = row[j];
                if (v == 0.0) continue;
                if (v < drop_below_) {
                    dropped_ += v;
                    v = 0.0;
                    continue;
                }
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
                cmin = std::min(cmin, j);
                cmax = std::max(cmax, j);
            }
        }
        if (rmax < 0) {
            width_ = height_ = 0;
            w_.clear();
        } else if (rmin > 0 || cmin > 0 || rmax < height_ - 1 || cmax < width_ - 1) {
            const long nw = cmax - cmin + 1, nh = rmax - rmin + 1;
            std::vector<double> trimmed(static_cast<std::size_t>(nw * nh));
            for (long r = 0; r < nh; ++r) {
                const double* src = w_.data() + (r + rmin) * width_ + cmin;
                std::copy(src, src + nw, trimmed.begin() + r * nw);
            }
            w_.swap(trimmed);
            x1_lo_ += cmin;
            x2_lo_ += rmin;
            width_ = nw;
            height_ = nh;
        }
    }
    if (!leaked_.empty()) {
        for (double& v : leaked_)
            if (v != 0.0 && v < drop_below_) {
                dropped_ += v;
                v = 0.0;
            }
        std::size_t first = 0, last = leaked_.size();
        while (first < last && leaked_[first] == 0.0) ++first;
        while (last > first && leaked_[last - 1] == 0.0) --last;
        if (first > 0 || last < leaked_.size()) {
            leaked_ = std::vector<double>(leaked_.begin() + static_cast<long>(first), leaked_.begin() + static_cast<long>(last));
            leaked_lo_ += static_cast<long>(first);
        }
    }
}

double QuadrantMeasure::weight(Point z) const {
    if (empty() || z.x1 < x1_lo_ || z.x1 > x1_hi() || z.x2 < x2_lo_ || z.x2 > x2_hi()) return 0.0;
    return w_[static_cast<std::size_t>((z.x2 - x2_lo_) * width_ + (z.x1 - x1_lo_))];
}

double QuadrantMeasure::grid_mass() const {
    double s = 0.0;
    for (double v : w_) s += v;
    return s;
}

double QuadrantMeasure::leaked_mass() const {
    double s = 0.0;
    for (double v : leaked_) s += v;
    return s;
}

double QuadrantMeasure::error_bound() const { return leaked_total_ * leak_return_ + dropped_; }

void QuadrantMeasure::for_each(const std::function<void(Point, double)>& f) const {
    for (long r = 0; r < height_; ++r)
        for (long j = 0; j < width_; ++j) {
            const double v = w_[static_cast<std::size_t>(r * width_ + j)];
            if (v != 0.0) f({x1_lo_ + j, x2_lo_ + r}, v);
        }
}

std::string QuadrantMeasure::to_csv() const {
    std::string out = "x1,x2,weight\n";
    for_each([&](Point z, double v) { out += fmt::format("{},{},{}\n", z.x1, z.x2, v); });
    return out;
}

namespace {

void check_horizon(long n) {
    if (n < 0) throw InputError(ErrorCode::NegativeHorizon, "n must be >= 0");
}

} // namespace

DpValue survival_prob(const StepDistribution& sd, Point x, long n, ExitSpec spec, const DpOptions& opts) {
    check_horizon(n);
    QuadrantMeasure m(sd, x, spec, opts);
    m.advance(n);
    return {m.alive_mass(), m.error_bound()};
}

double local_prob(const StepDistribution& sd, Point x, Point y, long n, ExitSpec spec, DpOptions opts) {
    check_horizon(n);
    opts.barrier.reset();
    QuadrantMeasure m(sd, x, spec, opts);
    m.advance(n);
    return m.weight(y);
}

double half_plane_survival(const StepDistribution& sd, long x2, long n, BoundaryConvention conv) {
    check_horizon(n);
    const Law1D law = vertical_marginal(sd);
    const long vmin = first_alive(conv);
    if (x2 < vmin) throw InputError(ErrorCode::OutsideRegion, "x2 is not in the surviving range");
    long lo = x2;
    std::vector<double> alive{1.0}, next;
    for (long k = 0; k < n && !alive.empty(); ++k) {
        const long nlo = std::max(lo + law.min_step(), vmin);
        const long nhi = lo + static_cast<long>(alive.size()) - 1 + law.max_step();
        next.assign(static_cast<std::size_t>(std::max<long>(0, nhi - nlo + 1)), 0.0);
        for (std::size_t i = 0; i < alive.size(); ++i) {
            const long p = lo + static_cast<long>(i);
            for (std::size_t j = 0; j < law.probs.size(); ++j) {
                const long q = p + law.offset + static_cast<long>(j);
                if (q >= nlo) next[static_cast<std::size_t>(q - nlo)] += alive[i] * law.probs[j];
            }
        }
        alive.swap(next);
        lo = nlo;
    }
    double s = 0.0;
    for (double v : alive) s += v;
    return s;
}

double half_plane_local(const StepDistribution& sd, Point x, Point y, long n, BoundaryConvention conv, double drop_below) {
    check_horizon(n);
    DpOptions opts;
    opts.barrier.reset();
    opts.drop_below = drop_below;
    QuadrantMeasure m(sd, x, {Region::UpperHalfPlane, conv}, opts);
    m.advance(n);
    return m.weight(y);
}

void run_schedule(QuadrantMeasure& m, std::vector<long> schedule,
                  const std::function<void(const QuadrantMeasure&)>& visit) {
    std::sort(schedule.begin(), schedule.end());
    for (long target : schedule) {
        check_horizon(target);
        if (target < m.n()) throw InputError(ErrorCode::BadArgument, "schedule point is behind the measure");
        m.advance(target - m.n());
        visit(m);
    }
}

} // namespace quadwalk
