#include "linkvol/kernels.hpp"

#include <cmath>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {
const double kPi = 3.14159265358979323846;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const double kSqrt2 = std::sqrt(2.0);
} // namespace

Kappa Kappa::make(double kappa) {
    if (!(kappa > 0))
        throw Error(ErrorCategory::domain, "kappa must be positive");
    Kappa k;
    k.kappa = kappa;
    const double a = kappa / kSqrt2Pi;
    const double b = kappa * kappa / (8.0 * kPi);
    k.kappa_tilde = (std::sqrt(kPi) / 2.0) * (kappa / 4.0) * a * a * b * b;
    k.lambda = (kappa / (4.0 * kPi)) * a * a * b * b;
    k.delta = (kappa / (2.0 * kSqrt2Pi)) * b * b;
    return k;
}

double q_kernel(double kappa, double x, double t) {
    const double d = t - x;
    return std::sqrt(kappa) / std::pow(2.0 * kPi, 0.25) *
           std::exp(-kappa * kappa * d * d / 4.0);
}

double dinv_q(double kappa, double x, double t) {
    return std::sqrt(kPi) * std::pow(2.0 * kPi, -0.25) / std::sqrt(kappa) *
           std::erf(kappa * (t - x) / 2.0);
}

double inner_dinvq_q(double kappa, double s, double z) {
    return (kSqrt2Pi / kappa) * std::erf(kappa * (z - s) / (2.0 * kSqrt2));
}

double inner_dinvq_q_quad(double kappa, double s, double z,
                          const QuadratureConfig& cfg) {
    // The integrand dinv_q(t) * q_kernel(t) has all its mass in the Gaussian
    // factor centered at z with std deviation sqrt(2)/kappa.
    const double w = cfg.sigma_radius * kSqrt2 / kappa;
    double lo = z - w, hi = z + w;
    // The erf factor saturates but the Gaussian decays; still widen the window
    // to include s so the sign transition is always covered.
    if (s < lo) lo = s - w;
    if (s > hi) hi = s + w;
    return integrate_or_throw(
        [&](double t) { return dinv_q(kappa, s, t) * q_kernel(kappa, z, t); },
        lo, hi, cfg);
}

double pair2d(double kappa, Vec2 a, Vec2 b) {
    const Vec2 d = a - b;
    return std::exp(-kappa * kappa * dot(d, d) / 8.0);
}

double pairing_k(double kappa, const Point4& x, const Point4& y, int k) {
    if (k < 1 || k > 3)
        throw Error(ErrorCategory::domain, "axis index must be 1, 2 or 3");
    const Vec3 xs = x.spatial(), ys = y.spatial();
    // the two spatial coordinates other than k
    const int i = k % 3, j = (k + 1) % 3;
    const Vec2 xh{xs[i], xs[j]}, yh{ys[i], ys[j]};
    const double mid =
        kSqrt2Pi * std::erf(kappa * (xs[k - 1] - ys[k - 1]) / (2.0 * kSqrt2));
    return pair2d(kappa, xh, yh) * mid * inner_dinvq_q(kappa, x.t, y.t);
}

double gaussian_product_identity_residual(double kappa, Vec2 a, Vec2 b,
                                          const QuadratureConfig& cfg) {
    const double k2 = kappa * kappa;
    // Product of the two Gaussians is a Gaussian centered at the midpoint with
    // std deviation 2/kappa per axis.
    const Vec2 c = 0.5 * (a + b);
    const double w = cfg.sigma_radius * 2.0 / kappa + 0.5 * norm(a - b);
    const double pref = (k2 / (8.0 * kPi)) * (k2 / (8.0 * kPi));
    auto f = [&](double zx, double zy) {
        const Vec2 z{zx, zy};
        return pair2d(kappa, a, z) * pair2d(kappa, b, z);
    };
    const double lhs =
        pref * integrate2d(f, c.x - w, c.x + w, c.y - w, c.y + w, cfg);
    const Vec2 d = a - b;
    const double rhs = (k2 / (16.0 * kPi)) * std::exp(-k2 * dot(d, d) / 16.0);
    return std::abs(lhs - rhs);
}

double sgn_limit_value(double kappa, double s, double t,
                       const QuadratureConfig& cfg) {
    if (s == t)
        throw Error(ErrorCategory::precondition,
                    "smoothed sign requires distinct arguments");
    const double w = cfg.sigma_radius * 2.0 / kappa;
    double lo = t - w, hi = t + w;
    if (s < lo) lo = s - w;
    if (s > hi) hi = s + w;
    const double k2 = kappa * kappa;
    const double v = integrate_or_throw(
        [&](double z) {
            return inner_dinvq_q(kappa, s, z) *
                   std::exp(-k2 * (t - z) * (t - z) / 8.0);
        },
        lo, hi, cfg);
    return k2 / (4.0 * kPi) * v;
}

} // namespace linkvol
