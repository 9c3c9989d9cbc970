#pragma once

#include "quadwalk/ladders.hpp"
#include "quadwalk/walk_model.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quadwalk {

enum class Region { Quadrant, UpperHalfPlane, RightHalfPlane };

const char* to_string(Region region);

/// Which half-plane kills apply. Quadrant exit is the first of the vertical
/// (tau_x) and horizontal (sigma_x) exits, so its kill set is the union.
struct ExitSpec {
    Region region = Region::Quadrant;
    BoundaryConvention conv = BoundaryConvention::KillOnNonpositive;

    bool kills_vertical() const { return region != Region::RightHalfPlane; }
    bool kills_horizontal() const { return region != Region::UpperHalfPlane; }
    bool survives(Point z) const {
        const long lo = first_alive(conv);
        return !(kills_vertical() && z.x2 < lo) && !(kills_horizontal() && z.x1 < lo);
    }
};

/// Positive root gamma of E[exp(-gamma X1)] = 1 for a horizontal law with
/// positive drift; +inf when X1 >= 0 a.s. Walks started at level a > 0 reach
/// (-inf, 0] with probability at most exp(-gamma a).
double lundberg_root(const Law1D& horizontal);

/// Smallest barrier L >= max|dx| with exp(-gamma (L + 1)) <= target.
long auto_barrier(const StepDistribution& sd, double target = 1e-12);

struct DpOptions {
    /// Horizontal barrier: nullopt disables it, a value <= -1 requests auto.
    std::optional<long> barrier = -1;
    double barrier_target = 1e-12;
    /// Individual weights below this are removed and accounted in the bound.
    double drop_below = 1e-300;
};

/// Killed measure P(x + S(n) = z, survive) on a dense bounding box that
/// tracks the support. With a barrier L, mass that reaches x1 > L moves to a
/// one-dimensional vertical measure on which only the vertical kill acts.
class QuadrantMeasure {
public:
    QuadrantMeasure(const StepDistribution& sd, Point start, ExitSpec spec, const DpOptions& opts = {});

    /// One convolution with the step law followed by the kill.
    void step();
    void advance(long steps);

    long n() const { return n_; }
    const ExitSpec& spec() const { return spec_; }
    std::optional<long> barrier() const { return barrier_; }

    /// Alive weight at z in the two-dimensional part (0 outside the box).
    double weight(Point z) const;
    double grid_mass() const;
    double leaked_mass() const;
    double alive_mass() const { return grid_mass() + leaked_mass(); }
    double killed_mass() const { return killed_; }
    double dropped_mass() const { return dropped_; }
    double leaked_total() const { return leaked_total_; }
    /// Sum of weight * x2 over all mass at the moment it leaked.
    double leaked_x2_total() const { return leaked_x2_total_; }
    /// Bound on |computed - exact| for any probability of the alive set.
    double error_bound() const;
    /// exp(-gamma (L + 1)): bound on the kill probability of one unit of leaked mass.
    double leak_return_bound() const { return leak_return_; }

    long x1_lo() const { return x1_lo_; }
    long x1_hi() const { return x1_lo_ + width_ - 1; }
    long x2_lo() const { return x2_lo_; }
    long x2_hi() const { return x2_lo_ + height_ - 1; }
    bool empty() const { return width_ <= 0 || height_ <= 0; }

    /// Leaked vertical measure: leaked()[i] is the weight at x2 = leaked_lo() + i.
    std::span<const double> leaked() const { return leaked_; }
    long leaked_lo() const { return leaked_lo_; }

    void for_each(const std::function<void(Point, double)>& f) const;
    /// CSV snapshot with header x1,x2,weight (two-dimensional part only).
    std::string to_csv() const;

private:
    void step_grid();
    void step_leaked();
    void migrate();
    void prune();

    std::vector<Atom> atoms_;
    Law1D vertical_;
    ExitSpec spec_;
    std::optional<long> barrier_;
    double drop_below_;
    double leak_return_ = 0.0;
    int min_dx_, max_dx_, min_dy_, max_dy_;

    long n_ = 0;
    long x1_lo_ = 0, x2_lo_ = 0, width_ = 0, height_ = 0;
    std::vector<double> w_, scratch_;
    long leaked_lo_ = 0;
    std::vector<double> leaked_, leaked_scratch_;
    double killed_ = 0.0, dropped_ = 0.0, leaked_total_ = 0.0, leaked_x2_total_ = 0.0;
};

struct DpValue {
    double value = 0.0;
    double error_bound = 0.0;
};

/// P(T_x > n) (or the matching half-plane survival for other regions).
DpValue survival_prob(const StepDistribution& sd, Point x, long n, ExitSpec spec = {}, const DpOptions& opts = {});

/// P(x + S(n) = y, survive until n). Computed without a barrier.
double local_prob(const StepDistribution& sd, Point x, Point y, long n, ExitSpec spec = {}, DpOptions opts = {});

/// P(tau_x > n) from the vertical walk alone.
double half_plane_survival(const StepDistribution& sd, long x2, long n,
                           BoundaryConvention conv = BoundaryConvention::KillOnNonpositive);

/// P(x + S(n) = y, tau_x > n): vertical kill only, horizontal range exact.
double half_plane_local(const StepDistribution& sd, Point x, Point y, long n,
                        BoundaryConvention conv = BoundaryConvention::KillOnNonpositive, double drop_below = 1e-300);

/// Runs one measure and calls `visit` after reaching each n in `schedule`
/// (sorted ascending internally; n = 0 allowed).
void run_schedule(QuadrantMeasure& m, std::vector<long> schedule,
                  const std::function<void(const QuadrantMeasure&)>& visit);

} // namespace quadwalk
