#pragma once

#include "quadwalk/asymptotics.hpp"
#include "quadwalk/exact_dp.hpp"
#include "quadwalk/ladders.hpp"
#include "quadwalk/walk_model.hpp"

namespace quadwalk {

struct PipelineOptions {
    BoundaryConvention conv = BoundaryConvention::KillOnNonpositive;
    long renewal_size = 20000;
    LadderOptions ladder;
    double harmonic_tol = 1e-9;
    long harmonic_range = 50;
};

/// Everything derived from a step law satisfying zero vertical and positive
/// horizontal drift. Construction validates the law and the kill convention.
///
/// The renewal series V is harmonic for the vertical walk under exactly one
/// kill rule (validated). When the DP uses the other rule the table is read
/// with a unit shift so that V_kill stays harmonic for the DP's kill rule;
/// H is handled the same way for the reversed walk.
class ConditionedWalk {
public:
    explicit ConditionedWalk(StepDistribution sd, PipelineOptions opts = {});

    const StepDistribution& steps() const { return sd_; }
    const Moments& moments() const { return moments_; }
    const GaussParams& gauss() const { return gauss_; }
    const LatticeStructure& lattice() const { return lattice_; }
    const Law1D& vertical() const { return vertical_; }
    const Law1D& horizontal() const { return horizontal_; }
    BoundaryConvention convention() const { return opts_.conv; }
    ExitSpec quadrant() const { return {Region::Quadrant, opts_.conv}; }

    const LadderDist& descending() const { return down_; }
    const LadderDist& ascending() const { return up_; }
    const LadderDist& reversed_descending() const { return down_rev_; }
    double kappa() const { return kappa_; }
    double kappa_prime() const { return kappa_prime_; }
    AsymptoticConstants constants() const;

    const RenewalTable& V_table() const { return V_; }
    const RenewalTable& H_table() const { return H_; }
    const ConventionReport& V_report() const { return v_report_; }
    long V_shift() const { return v_shift_; }
    long H_shift() const { return h_shift_; }

    /// Harmonic for the vertical walk under the DP kill rule.
    double V(long x2) const;
    /// Harmonic for the reversed vertical walk under the DP kill rule.
    double H(long y2) const;
    /// (a, b) with V(u) <= a + b u for all u.
    std::pair<double, double> V_linear_bound() const;

    /// Horizontal Lundberg exponent.
    double gamma() const { return gamma_; }

private:
    StepDistribution sd_;
    PipelineOptions opts_;
    Moments moments_;
    GaussParams gauss_;
    LatticeStructure lattice_;
    Law1D vertical_, horizontal_;
    LadderDist down_, up_, down_rev_;
    double kappa_ = 0.0, kappa_prime_ = 0.0, gamma_ = 0.0;
    RenewalTable V_, H_;
    ConventionReport v_report_;
    long v_shift_ = 0, h_shift_ = 0;
};

} // namespace quadwalk
