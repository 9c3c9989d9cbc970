#include "quadwalk/asymptotics.hpp"

#include "quadwalk/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace quadwalk {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
double integrate(F f, double a, double b, double tol) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

double normal_pdf(double v, double var) { return std::exp(-v * v / (2.0 * var)) / std::sqrt(2.0 * pi * var); }

} // namespace

GaussParams GaussParams::from_moments(const Moments& m) {
    GaussParams gp{m.mu[0], m.s11, m.s22, m.s12};
    if (!(gp.s11 > 0.0) || !(gp.s22 > 0.0) || !(gp.D() > 1e-14 * gp.s11 * gp.s22))
        throw InputError(ErrorCode::DegenerateSupport, "covariance matrix is singular");
    return gp;
}

double free_kernel(double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp) {
    if (!(t > 0.0)) throw InputError(ErrorCode::BadArgument, "kernel time must be positive");
    const Vec2 v{y[0] - x[0] - t * mu[0], y[1] - x[1] - t * mu[1]};
    return std::exp(-gp.quad_form(v) / (2.0 * t)) / (2.0 * pi * t * std::sqrt(gp.D()));
}

double bm_kernel(double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp) {
    if (!(t > 0.0)) throw InputError(ErrorCode::BadArgument, "kernel time must be positive");
    if (x[1] <= 0.0 || y[1] <= 0.0) return 0.0;
    return -std::expm1(-2.0 * y[1] * x[1] / (t * gp.s22)) * free_kernel(t, x, y, mu, gp);
}

double bm_kernel_reflection(double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp) {
    if (!(t > 0.0)) throw InputError(ErrorCode::BadArgument, "kernel time must be positive");
    if (x[1] <= 0.0 || y[1] <= 0.0) return 0.0;
    const double horiz = normal_pdf(y[0] - x[0] - t * mu[0], gp.s11 * t);
    const double vert = normal_pdf(y[1] - x[1] - t * mu[1], gp.s22 * t) - normal_pdf(y[1] + x[1] - t * mu[1], gp.s22 * t);
    return horiz * vert;
}

double density_p(Vec2 y, const GaussParams& gp) {
    if (!(y[1] > 0.0)) return 0.0;
    const double D = gp.D();
    return y[1] / (std::sqrt(gp.s22) * std::sqrt(2.0 * pi * D)) * std::exp(-gp.quad_form(y) / 2.0);
}

double qbar(double y1, const GaussParams& gp) {
    const double D = gp.D();
    return std::exp(-gp.s22 * y1 * y1 / (4.0 * D)) / (8.0 * std::sqrt(D));
}

double qbar_convolution(double y1, const GaussParams& gp, double tol) {
    // The integrand is Gaussian in z with scale at most the largest sigma.
    const double s = std::sqrt(std::max(gp.s11, gp.s22));
    const double half = 8.0 * s + std::abs(y1);
    auto inner = [&](double z2) {
        return integrate([&](double z1) { return density_p({y1 + z1, z2}, gp) * density_p({z1, z2}, gp); },
                         -y1 / 2.0 - half, -y1 / 2.0 + half, tol);
    };
    return integrate(inner, 0.0, 8.0 * std::sqrt(gp.s22), tol);
}

double q_density(double y1, const GaussParams& gp, const AsymptoticConstants& c) {
    return 2.0 * c.kappa * c.kappa_prime * qbar(y1, gp);
}

double int_q(const GaussParams& gp, double kappa, double kappa_prime) {
    return kappa * kappa_prime * std::sqrt(pi) / (2.0 * std::sqrt(gp.s22));
}

double int_q_quadrature(const GaussParams& gp, const AsymptoticConstants& c, double tol) {
    const double s = std::sqrt(2.0 * gp.D() / gp.s22);
    return integrate([&](double z) { return q_density(z, gp, c); }, -12.0 * s, 12.0 * s, tol);
}

double integrate_p_box(Vec2 lo, Vec2 hi, const GaussParams& gp, double tol) {
    const double a2 = std::max(lo[1], 0.0);
    if (!(hi[1] > a2) || !(hi[0] > lo[0])) return 0.0;
    auto inner = [&](double y2) { return integrate([&](double y1) { return density_p({y1, y2}, gp); }, lo[0], hi[0], tol); };
    return integrate(inner, a2, hi[1], tol);
}

double integrate_p_total(const GaussParams& gp, double tol) {
    const double s1 = std::sqrt(gp.s11), s2 = std::sqrt(gp.s22);
    const double slope = gp.rho / gp.s22;
    auto inner = [&](double y2) {
        // Conditional mean of y1 given y2 is slope * y2.
        const double c = slope * y2;
        return integrate([&](double y1) { return density_p({y1, y2}, gp); }, c - 8.0 * s1, c + 8.0 * s1, tol);
    };
    return integrate(inner, 0.0, 8.0 * s2, tol);
}

double chapman_kolmogorov_integral(double s, double t, Vec2 x, Vec2 y, Vec2 mu, const GaussParams& gp, double tol) {
    const double sd1 = std::sqrt(gp.s11 * (s + t)), sd2 = std::sqrt(gp.s22 * (s + t));
    const double c1 = x[0] + s * mu[0];
    auto inner = [&](double z2) {
        return integrate([&](double z1) { return bm_kernel(s, x, {z1, z2}, mu, gp) * bm_kernel(t, {z1, z2}, y, mu, gp); },
                         c1 - 10.0 * sd1 - std::abs(y[0] - c1), c1 + 10.0 * sd1 + std::abs(y[0] - c1), tol);
    };
    return integrate(inner, 0.0, std::max(x[1], y[1]) + 10.0 * sd2, tol);
}

double predict_tail(long n, double kappa, double W) { return kappa * W / std::sqrt(static_cast<double>(n)); }

double predict_integral(long n, Vec2 lo, Vec2 hi, double kappa, double W, const GaussParams& gp) {
    return kappa * W * integrate_p_box(lo, hi, gp) / std::sqrt(static_cast<double>(n));
}

namespace {

Vec2 rescale(Point y, long n, const GaussParams& gp) {
    const double rn = std::sqrt(static_cast<double>(n));
    return {(static_cast<double>(y.x1) - static_cast<double>(n) * gp.mu1) / rn, static_cast<double>(y.x2) / rn};
}

} // namespace

double predict_llt(Point y, long n, const LatticeStructure& ls, double kappa, double W, const GaussParams& gp) {
    const double nn = static_cast<double>(n);
    return static_cast<double>(ls.d1 * ls.d2) * kappa * W * density_p(rescale(y, n, gp), gp) / (nn * std::sqrt(nn));
}

double predict_llt_halfplane(Point y, long n, const LatticeStructure& ls, double kappa, double V, const GaussParams& gp) {
    const double nn = static_cast<double>(n);
    return kappa * static_cast<double>(ls.d1 * ls.d2) * density_p(rescale(y, n, gp), gp) * V / (nn * std::sqrt(nn));
}

double predict_boundary_llt(long y1, long n, const LatticeStructure& ls, const AsymptoticConstants& c, double H,
                            double W, const GaussParams& gp) {
    const double nn = static_cast<double>(n);
    const double z = (static_cast<double>(y1) - nn * gp.mu1) / std::sqrt(nn);
    return static_cast<double>(ls.d1 * ls.d2) * q_density(z, gp, c) * H * W / (nn * nn);
}

double predict_line(long n, const LatticeStructure& ls, const AsymptoticConstants& c, double H, double W) {
    const double nn = static_cast<double>(n);
    return static_cast<double>(ls.d1 * ls.d2) * W * H / (nn * std::sqrt(nn)) * c.int_q;
}

double predict_boundary_llt_reversal(long y1, long n, const LatticeStructure& ls, const AsymptoticConstants& c,
                                     double H, double W, const GaussParams& gp) {
    const double nn = static_cast<double>(n);
    const double z = (static_cast<double>(y1) - nn * gp.mu1) / std::sqrt(nn);
    return 4.0 * static_cast<double>(ls.d1 * ls.d2) * c.kappa * c.kappa_plus * qbar(std::sqrt(2.0) * z, gp) * H * W /
           (nn * nn);
}

double predict_line_reversal(long n, const LatticeStructure& ls, const AsymptoticConstants& c, double H, double W,
                             const GaussParams& gp) {
    // Integral of qbar(sqrt(2) z) dz is sqrt(pi) / (4 sqrt(2) sigma_2).
    const double nn = static_cast<double>(n);
    const double integral = std::sqrt(pi) / (4.0 * std::sqrt(2.0 * gp.s22));
    return 4.0 * static_cast<double>(ls.d2) * c.kappa * c.kappa_plus * integral * H * W / (nn * std::sqrt(nn));
}

} // namespace quadwalk
