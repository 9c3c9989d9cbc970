#include "quadwalk/pipeline.hpp"

#include "quadwalk/errors.hpp"

#include <cmath>

namespace quadwalk {

ConditionedWalk::ConditionedWalk(StepDistribution sd, PipelineOptions opts)
    : sd_(std::move(sd)), opts_(std::move(opts)) {
    moments_ = compute_moments(sd_);
    if (std::abs(moments_.mu[1]) > 1e-10)
        throw InputError(ErrorCode::NonZeroDrift, "vertical drift must be zero");
    if (!(moments_.mu[0] > 0.0))
        throw InputError(ErrorCode::BadArgument, "horizontal drift must be positive");
    gauss_ = GaussParams::from_moments(moments_);
    lattice_ = lattice_decompose(sd_);
    vertical_ = vertical_marginal(sd_);
    horizontal_ = horizontal_marginal(sd_);
    gamma_ = lundberg_root(horizontal_);

    down_ = descending_ladder(vertical_, BoundaryConvention::KillOnNonpositive, opts_.ladder);
    up_ = ascending_ladder(vertical_, opts_.ladder);
    down_rev_ = descending_ladder(vertical_.reflected(), BoundaryConvention::KillOnNonpositive, opts_.ladder);
    kappa_ = quadwalk::kappa(down_);
    kappa_prime_ = quadwalk::kappa(down_rev_);

    V_ = renewal_V(down_, opts_.renewal_size);
    v_report_ = validate_convention(vertical_, V_, opts_.harmonic_range, opts_.harmonic_tol);
    v_shift_ = first_alive(opts_.conv) - first_alive(v_report_.selected);

    // H vanishes at 0, so it is harmonic for the reversed walk under either
    // kill rule once survivors start at 1.
    H_ = renewal_H(up_, opts_.renewal_size);
    const double h_res = one_step_residual(vertical_.reflected(), H_, BoundaryConvention::KillOnNonpositive,
                                           opts_.harmonic_range);
    if (h_res > opts_.harmonic_tol)
        throw NumericError("H is not harmonic for the reversed vertical walk", h_res);
    h_shift_ = first_alive(opts_.conv) - 1;
}

AsymptoticConstants ConditionedWalk::constants() const {
    return {kappa_, kappa_prime_, int_q(gauss_, kappa_, kappa_prime_), quadwalk::kappa(up_)};
}

double ConditionedWalk::V(long x2) const { return V_.at(x2 - v_shift_); }

double ConditionedWalk::H(long y2) const { return H_.at(y2 - h_shift_); }

std::pair<double, double> ConditionedWalk::V_linear_bound() const {
    auto [a, b] = V_.linear_bound();
    // V(x2 - s) <= a + b (x2 - s) <= (a + b |s|) + b x2.
    return {a + b * std::abs(static_cast<double>(v_shift_)), b};
}

} // namespace quadwalk
