#pragma once

#include "quadwalk/ladders.hpp"
#include "quadwalk/walk_model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <vector>

namespace quadwalk {

using BigInt = boost::multiprecision::cpp_int;

/// Exact number of n-step paths from x to every endpoint that stay in the
/// quadrant (both coordinates alive under `conv`). No barrier, no pruning:
/// memory grows like n^2 cells of big integers.
class PathCounts {
public:
    PathCounts(std::span<const Point> steps, Point x, long n,
               BoundaryConvention conv = BoundaryConvention::KillOnNonpositive);

    const BigInt& at(Point y) const;
    BigInt total() const;
    /// Sum over endpoints with x2 == y2.
    BigInt line(long y2) const;
    long n() const { return n_; }

private:
    long n_ = 0;
    long x1_lo_ = 0, x2_lo_ = 0, width_ = 0, height_ = 0;
    std::vector<BigInt> cells_;
};

/// N_n(x, y).
BigInt count_paths(std::span<const Point> steps, Point x, Point y, long n,
                   BoundaryConvention conv = BoundaryConvention::KillOnNonpositive);

/// M_n(x) = sum_m N_n(x, (m, 1)); the line is {(m, y2) : m >= 1}. M_0 is 1
/// when x already lies on the line.
BigInt count_line(std::span<const Point> steps, Point x, long n, long y2 = 1,
                  BoundaryConvention conv = BoundaryConvention::KillOnNonpositive);

std::vector<Point> singular_step_points();

} // namespace quadwalk
