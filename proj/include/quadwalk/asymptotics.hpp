#pragma once

#include "quadwalk/walk_model.hpp"

#include <array>

namespace quadwalk {

using Vec2 = std::array<double, 2>;

struct GaussParams {
    double mu1 = 0.0;
    double s11 = 1.0; ///< sigma_1^2
    double s22 = 1.0; ///< sigma_2^2
    double rho = 0.0; ///< covariance of the two coordinates

    double D() const { return s11 * s22 - rho * rho; }
    /// Sigma^{-1} quadratic form.
    double quad_form(Vec2 v) const { return (s22 * v[0] * v[0] + s11 * v[1] * v[1] - 2.0 * rho * v[0] * v[1]) / D(); }

    /// Throws InputError(DegenerateSupport) when D <= 0 or a variance vanishes.
    static GaussParams from_moments(const Moments& m);
};

struct AsymptoticConstants {
    double kappa = 0.0;
    double kappa_prime = 0.0;
    double int_q = 0.0;
    /// sqrt(2/pi) E[chi+]: survival constant of the reversed walk started below H.
    double kappa_plus = 0.0;
};

/// Density of Brownian motion with drift mu and covariance t*Sigma, started
/// at x and killed on leaving the upper half-plane. 0 when x2 <= 0 or y2 <= 0.
double bm_kernel(double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp);

/// Unkilled Gaussian density with the same parameters.
double free_kernel(double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp);

/// Limit density of the rescaled walk conditioned on the upper half-plane.
double density_p(Vec2 y, const GaussParams& gp);

/// qbar(y1, 0) closed form.
double qbar(double y1, const GaussParams& gp);

/// qbar(y1, 0) as the integral of p(y + z) p(z) over z in R x [0, inf).
double qbar_convolution(double y1, const GaussParams& gp, double tol = 1e-13);

double q_density(double y1, const GaussParams& gp, const AsymptoticConstants& c);

/// Closed-form integral of q over the real line.
double int_q(const GaussParams& gp, double kappa, double kappa_prime);
double int_q_quadrature(const GaussParams& gp, const AsymptoticConstants& c, double tol = 1e-13);

/// Integral of p over the box [lo, hi] (coordinates clipped to y2 >= 0).
double integrate_p_box(Vec2 lo, Vec2 hi, const GaussParams& gp, double tol = 1e-13);
/// Integral of p over R x (0, inf), truncated at 8 standard deviations.
double integrate_p_total(const GaussParams& gp, double tol = 1e-13);

/// Integral of K_s(x, z) K_t(z, y) over z in the upper half-plane.
double chapman_kolmogorov_integral(double s, double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp,
                                   double tol = 1e-12);

/// The rho = 0 construction: free horizontal Gaussian times the reflected
/// vertical kernel (difference of two Gaussians).
double bm_kernel_reflection(double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp);

// Predictors. Each returns the leading term of the corresponding limit
// statement evaluated at finite n.

/// kappa W / sqrt(n).
double predict_tail(long n, double kappa, double W);
/// kappa W / sqrt(n) * integral of p over [lo, hi].
double predict_integral(long n, Vec2 lo, Vec2 hi, double kappa, double W, const GaussParams& gp);
/// d1 d2 kappa W p((y - n mu)/sqrt(n)) / n^{3/2}.
double predict_llt(Point y, long n, const LatticeStructure& ls, double kappa, double W, const GaussParams& gp);
/// kappa d1 d2 p((y - n mu)/sqrt(n)) V(x2) / n^{3/2}.
double predict_llt_halfplane(Point y, long n, const LatticeStructure& ls, double kappa, double V, const GaussParams& gp);
/// d1 d2 q((y1 - n mu1)/sqrt(n)) H(y2) W / n^2.
double predict_boundary_llt(long y1, long n, const LatticeStructure& ls, const AsymptoticConstants& c, double H,
                            double W, const GaussParams& gp);
/// d1 d2 W H(y2) / n^{3/2} * integral of q.
double predict_line(long n, const LatticeStructure& ls, const AsymptoticConstants& c, double H, double W);

/// Alternative leading terms obtained by splitting the path at n/2 and
/// reversing the second half: the quadrant-conditioned first half meets the
/// reversed walk started at y, which survives with probability about
/// kappa_plus H(y2) / sqrt(n/2). Valid for sigma_2^2 = 1.
///   4 d1 d2 kappa kappa_plus qbar(sqrt(2) z) H W / n^2
double predict_boundary_llt_reversal(long y1, long n, const LatticeStructure& ls, const AsymptoticConstants& c,
                                     double H, double W, const GaussParams& gp);
/// Sum of the above over y1 in steps of d1.
double predict_line_reversal(long n, const LatticeStructure& ls, const AsymptoticConstants& c, double H, double W,
                             const GaussParams& gp);

} // namespace quadwalk
