#pragma once

#include <array>
#include <span>
#include <vector>

namespace quadwalk {

/// Integer lattice point or increment.
struct Point {
    long x1 = 0;
    long x2 = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Atom {
    int dx = 0;
    int dy = 0;
    double weight = 0.0;
};

/// Finite-support law of one increment X(1) on Z^2.
///
/// Atoms are kept sorted by (dx, dy) with duplicates merged, so two
/// distributions built from the same multiset of raw atoms compare equal.
class StepDistribution {
public:
    /// Validates, merges duplicate atoms and normalizes to total weight 1.
    /// Throws InputError (EmptySteps, NegativeWeight, ZeroTotalWeight).
    static StepDistribution from_raw(std::span<const Atom> raw);

    /// Unit weight on each distinct step, unnormalized. Used for counting.
    static StepDistribution counting(std::span<const Point> steps);

    std::span<const Atom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_weight() const { return total_; }
    bool normalized() const { return normalized_; }

    int min_dx() const { return min_dx_; }
    int max_dx() const { return max_dx_; }
    int min_dy() const { return min_dy_; }
    int max_dy() const { return max_dy_; }

private:
    StepDistribution(std::vector<Atom> atoms, bool normalize);

    std::vector<Atom> atoms_;
    double total_ = 0.0;
    bool normalized_ = false;
    int min_dx_ = 0, max_dx_ = 0, min_dy_ = 0, max_dy_ = 0;
};

/// The three singular steps (1,-1), (1,1), (-1,1) with uniform weight.
StepDistribution singular_steps();

/// Law of a single integer coordinate: probs[i] = P(X = offset + i).
struct Law1D {
    int offset = 0;
    std::vector<double> probs;

    int min_step() const { return offset; }
    int max_step() const { return offset + static_cast<int>(probs.size()) - 1; }
    double mean() const;
    double mgf(double t) const;
    Law1D reflected() const;
};

Law1D horizontal_marginal(const StepDistribution& sd);
Law1D vertical_marginal(const StepDistribution& sd);

struct Moments {
    std::array<double, 2> mu{};
    double s11 = 0.0; ///< sigma_1^2
    double s12 = 0.0; ///< rho
    double s22 = 0.0; ///< sigma_2^2

    double det() const { return s11 * s22 - s12 * s12; }
};

Moments compute_moments(const StepDistribution& sd);

struct TiltParams {
    std::array<double, 2> h{};
    double phi = 1.0;
};

/// phi(h) = sum p(step) exp(h . step) for a normalized distribution.
double mgf(const StepDistribution& sd, std::array<double, 2> h);

struct Tilted {
    StepDistribution dist;
    TiltParams params;
};

Tilted tilt(const StepDistribution& sd, std::array<double, 2> h);

struct DriftSolverOptions {
    int max_iterations = 100;
    double residual_tol = 1e-12;
    double divergence_norm = 1e3;
};

/// Finds h with grad log phi(h) = target by damped Newton from h = 0.
/// Throws InputError(InfeasibleTarget) when the target is not interior to the
/// support hull, InputError(DegenerateSupport) when the Hessian is singular.
TiltParams solve_drift(const StepDistribution& sd, std::array<double, 2> target,
                       const DriftSolverOptions& opts = {});

/// X_i = a_i + d_i Y_i with Y aperiodic.
struct LatticeStructure {
    long a1 = 0, d1 = 1, a2 = 0, d2 = 1;
};

/// Throws InputError(DegenerateLattice) if a coordinate takes one value.
LatticeStructure lattice_decompose(const StepDistribution& sd);

/// True iff (z_i - a_i n) is divisible by d_i for both coordinates.
bool in_lattice_support(const LatticeStructure& ls, long n, Point z);

} // namespace quadwalk
