#include "quadwalk/walk_model.hpp"

#include "quadwalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quadwalk {

StepDistribution::StepDistribution(std::vector<Atom> atoms, bool normalize)
    : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
        return a.dx != b.dx ? a.dx < b.dx : a.dy < b.dy;
    });
    std::vector<Atom> merged;
    for (const auto& a : atoms_) {
        if (!merged.empty() && merged.back().dx == a.dx && merged.back().dy == a.dy)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    atoms_ = std::move(merged);

    total_ = 0.0;
    for (const auto& a : atoms_) total_ += a.weight;
    if (normalize) {
        for (auto& a : atoms_) a.weight /= total_;
        total_ = 1.0;
        normalized_ = true;
    }

    min_dx_ = max_dx_ = atoms_.front().dx;
    min_dy_ = max_dy_ = atoms_.front().dy;
    for (const auto& a : atoms_) {
        min_dx_ = std::min(min_dx_, a.dx);
        max_dx_ = std::max(max_dx_, a.dx);
        min_dy_ = std::min(min_dy_, a.dy);
        max_dy_ = std::max(max_dy_, a.dy);
    }
}

StepDistribution StepDistribution::from_raw(std::span<const Atom> raw) {
    if (raw.empty()) throw InputError(ErrorCode::EmptySteps, "step list is empty");
    double total = 0.0;
    for (const auto& a : raw) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.weight))
            throw InputError(ErrorCode::NegativeWeight, "step weight must be finite and >= 0");
        total += a.weight;
    }
    if (!(total > 0.0)) throw InputError(ErrorCode::ZeroTotalWeight, "total step weight is zero");
    // Zero-weight atoms carry no mass; dropping them keeps the support honest.
    std::vector<Atom> kept;
    for (const auto& a : raw)
        if (a.weight > 0.0) kept.push_back(a);
    return StepDistribution(std::move(kept), true);
}

StepDistribution StepDistribution::counting(std::span<const Point> steps) {
    if (steps.empty()) throw InputError(ErrorCode::EmptySteps, "step list is empty");
    std::vector<Atom> atoms;
    for (const auto& s : steps) atoms.push_back({static_cast<int>(s.x1), static_cast<int>(s.x2), 1.0});
    StepDistribution sd(std::move(atoms), false);
    for (auto& a : sd.atoms_) a.weight = 1.0;
    sd.total_ = static_cast<double>(sd.atoms_.size());
    return sd;
}

StepDistribution singular_steps() {
    const Atom raw[] = {{1, -1, 1.0}, {1, 1, 1.0}, {-1, 1, 1.0}};
    return StepDistribution::from_raw(raw);
}

double Law1D::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) m += probs[i] * (offset + static_cast<int>(i));
    return m;
}

double Law1D::mgf(double t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) s += probs[i] * std::exp(t * (offset + static_cast<int>(i)));
    return s;
}

Law1D Law1D::reflected() const {
    Law1D r;
    r.offset = -max_step();
    r.probs.assign(probs.rbegin(), probs.rend());
    return r;
}

namespace {

Law1D marginal(const StepDistribution& sd, bool vertical) {
    Law1D law;
    int lo = vertical ? sd.min_dy() : sd.min_dx();
    int hi = vertical ? sd.max_dy() : sd.max_dx();
    law.offset = lo;
    law.probs.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const auto& a : sd.atoms()) {
        int v = vertical ? a.dy : a.dx;
        law.probs[static_cast<std::size_t>(v - lo)] += a.weight / sd.total_weight();
    }
    return law;
}

} // namespace

Law1D horizontal_marginal(const StepDistribution& sd) { return marginal(sd, false); }
Law1D vertical_marginal(const StepDistribution& sd) { return marginal(sd, true); }

Moments compute_moments(const StepDistribution& sd) {
    Moments m;
    const double t = sd.total_weight();
    for (const auto& a : sd.atoms()) {
        m.mu[0] += a.weight / t * a.dx;
        m.mu[1] += a.weight / t * a.dy;
    }
    for (const auto& a : sd.atoms()) {
        const double p = a.weight / t;
        const double u = a.dx - m.mu[0];
        const double v = a.dy - m.mu[1];
        m.s11 += p * u * u;
        m.s12 += p * u * v;
        m.s22 += p * v * v;
    }
    return m;
}

double mgf(const StepDistribution& sd, std::array<double, 2> h) {
    double phi = 0.0;
    for (const auto& a : sd.atoms()) phi += a.weight * std::exp(h[0] * a.dx + h[1] * a.dy);
    return phi / sd.total_weight();
}

Tilted tilt(const StepDistribution& sd, std::array<double, 2> h) {
    const double phi = mgf(sd, h);
    std::vector<Atom> atoms;
    atoms.reserve(sd.size());
    for (const auto& a : sd.atoms())
        atoms.push_back({a.dx, a.dy, a.weight / sd.total_weight() * std::exp(h[0] * a.dx + h[1] * a.dy) / phi});
    return {StepDistribution::from_raw(atoms), {h, phi}};
}

TiltParams solve_drift(const StepDistribution& sd, std::array<double, 2> target,
                       const DriftSolverOptions& opts) {
    // Minimize f(h) = log phi(h) - <target, h>; f is strictly convex whenever
    // the support spans the plane.
    auto objective = [&](std::array<double, 2> h) { return std::log(mgf(sd, h)) - target[0] * h[0] - target[1] * h[1]; };

    std::array<double, 2> h{0.0, 0.0};
    double residual = 0.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const Moments m = compute_moments(tilt(sd, h).dist);
        const double g0 = m.mu[0] - target[0];
        const double g1 = m.mu[1] - target[1];
        residual = std::hypot(g0, g1);
        if (residual <= opts.residual_tol * 1e-3) break;

        const double det = m.det();
        const double scale = std::max(m.s11 + m.s22, 1e-300);
        if (!(det > 1e-14 * scale * scale)) {
            if (it == 0)
                throw InputError(ErrorCode::DegenerateSupport, "step support is degenerate: tilt Hessian is singular");
            throw InputError(ErrorCode::InfeasibleTarget, "drift target is on or outside the support hull");
        }
        const double d0 = -(m.s22 * g0 - m.s12 * g1) / det;
        const double d1 = -(-m.s12 * g0 + m.s11 * g1) / det;

        const double f0 = objective(h);
        double step = 1.0;
        std::array<double, 2> next{h[0] + d0, h[1] + d1};
        for (int k = 0; k < 60 && objective(next) > f0 + 1e-15 * std::abs(f0); ++k) {
            step *= 0.5;
            next = {h[0] + step * d0, h[1] + step * d1};
        }
        const bool stalled = next == h;
        h = next;
        if (std::hypot(h[0], h[1]) > opts.divergence_norm)
            throw InputError(ErrorCode::InfeasibleTarget, "drift target is on or outside the support hull");
        if (stalled) break;
    }

    const Moments m = compute_moments(tilt(sd, h).dist);
    residual = std::hypot(m.mu[0] - target[0], m.mu[1] - target[1]);
    if (residual > opts.residual_tol)
        throw InputError(ErrorCode::InfeasibleTarget, "drift solver did not converge; target is not interior to the support hull");
    return {h, mgf(sd, h)};
}

namespace {

long floor_mod(long a, long d) {
    long r = a % d;
    return r < 0 ? r + d : r;
}

} // namespace

LatticeStructure lattice_decompose(const StepDistribution& sd) {
    LatticeStructure ls;
    const auto& atoms = sd.atoms();
    long g1 = 0, g2 = 0;
    for (const auto& a : atoms) {
        g1 = std::gcd(g1, static_cast<long>(a.dx - atoms.front().dx));
        g2 = std::gcd(g2, static_cast<long>(a.dy - atoms.front().dy));
    }
    if (g1 == 0 || g2 == 0)
        throw InputError(ErrorCode::DegenerateLattice, "a coordinate of the step law takes a single value");
    ls.d1 = g1;
    ls.d2 = g2;
    ls.a1 = floor_mod(atoms.front().dx, g1);
    ls.a2 = floor_mod(atoms.front().dy, g2);
    return ls;
}

bool in_lattice_support(const LatticeStructure& ls, long n, Point z) {
    return floor_mod(z.x1 - ls.a1 * n, ls.d1) == 0 && floor_mod(z.x2 - ls.a2 * n, ls.d2) == 0;
}

} // namespace quadwalk
