#include "quadwalk/counting.hpp"

#include "quadwalk/errors.hpp"

#include <algorithm>

namespace quadwalk {

std::vector<Point> singular_step_points() { return {{1, -1}, {1, 1}, {-1, 1}}; }

PathCounts::PathCounts(std::span<const Point> steps, Point x, long n, BoundaryConvention conv) : n_(n) {
    if (steps.empty()) throw InputError(ErrorCode::EmptySteps, "step list is empty");
    if (n < 0) throw InputError(ErrorCode::NegativeHorizon, "n must be >= 0");
    const long vmin = first_alive(conv);
    if (x.x1 < vmin || x.x2 < vmin) throw InputError(ErrorCode::OutsideRegion, "start point is outside the quadrant");

    // Duplicate steps would double count; keep each step once.
    std::vector<Point> uniq(steps.begin(), steps.end());
    std::sort(uniq.begin(), uniq.end(), [](Point a, Point b) { return a.x1 != b.x1 ? a.x1 < b.x1 : a.x2 < b.x2; });
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    long min_dx = uniq.front().x1, max_dx = min_dx, min_dy = uniq.front().x2, max_dy = min_dy;
    for (const auto& s : uniq) {
        min_dx = std::min(min_dx, s.x1);
        max_dx = std::max(max_dx, s.x1);
        min_dy = std::min(min_dy, s.x2);
        max_dy = std::max(max_dy, s.x2);
    }

    x1_lo_ = x.x1;
    x2_lo_ = x.x2;
    width_ = height_ = 1;
    cells_.assign(1, BigInt(1));
    std::vector<BigInt> next;
    for (long k = 0; k < n; ++k) {
        const long nlo1 = std::max(x1_lo_ + min_dx, vmin), nhi1 = x1_lo_ + width_ - 1 + max_dx;
        const long nlo2 = std::max(x2_lo_ + min_dy, vmin), nhi2 = x2_lo_ + height_ - 1 + max_dy;
        const long nw = std::max<long>(0, nhi1 - nlo1 + 1), nh = std::max<long>(0, nhi2 - nlo2 + 1);
        next.assign(static_cast<std::size_t>(nw * nh), BigInt(0));
        for (long r = 0; r < height_; ++r)
            for (long j = 0; j < width_; ++j) {
                const BigInt& c = cells_[static_cast<std::size_t>(r * width_ + j)];
                if (c.is_zero()) continue;
                for (const auto& s : uniq) {
                    const long t1 = x1_lo_ + j + s.x1, t2 = x2_lo_ + r + s.x2;
                    if (t1 < vmin || t2 < vmin) continue;
                    next[static_cast<std::size_t>((t2 - nlo2) * nw + (t1 - nlo1))] += c;
                }
            }
        cells_.swap(next);
        x1_lo_ = nlo1;
        x2_lo_ = nlo2;
        width_ = nw;
        height_ = nh;
    }
}

const BigInt& PathCounts::at(Point y) const {
    static const BigInt zero(0);
    if (y.x1 < x1_lo_ || y.x1 >= x1_lo_ + width_ || y.x2 < x2_lo_ || y.x2 >= x2_lo_ + height_) return zero;
    return cells_[static_cast<std::size_t>((y.x2 - x2_lo_) * width_ + (y.x1 - x1_lo_))];
}

BigInt PathCounts::total() const {
    BigInt s = 0;
    for (const auto& c : cells_) s += c;
    return s;
}

BigInt PathCounts::line(long y2) const {
    BigInt s = 0;
    if (y2 < x2_lo_ || y2 >= x2_lo_ + height_) return s;
    for (long j = 0; j < width_; ++j) s += cells_[static_cast<std::size_t>((y2 - x2_lo_) * width_ + j)];
    return s;
}

BigInt count_paths(std::span<const Point> steps, Point x, Point y, long n, BoundaryConvention conv) {
    return PathCounts(steps, x, n, conv).at(y);
}

BigInt count_line(std::span<const Point> steps, Point x, long n, long y2, BoundaryConvention conv) {
    return PathCounts(steps, x, n, conv).line(y2);
}

} // namespace quadwalk
