#pragma once
#include <functional>
#include <vector>

namespace linkvol {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 400;
    // Gaussian integrands are truncated to a window of this many standard
    // deviations around their center; exp(-12^2/2) ~ 5e-32 is far below any
    // tolerance used here.
    double sigma_radius = 12.0;
};

struct QuadResult {
    double value = 0;
    double error_estimate = 0;
    int subdivisions = 0;
    bool converged = false;
};

// Adaptive 15-point Gauss-Kronrod quadrature of f over [a,b]: bisect the
// interval with the largest embedded-rule error until the summed estimate
// meets max(abs_tol, rel_tol*|integral|) or the subdivision budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureConfig& cfg = {});

// Same, but a failure to converge raises a tolerance error.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg = {});

// 2-D integral over [ax,bx] x [ay,by] as a tensor of two adaptive 1-D passes
// (adaptive outer rule, adaptive inner integral per outer node).
double integrate2d(const std::function<double(double, double)>& f, double ax,
                   double bx, double ay, double by,
                   const QuadratureConfig& cfg = {});

// Fixed-order Gauss-Legendre rule mapped to [0,1]. Nodes and weights are
// computed once per order by Newton iteration on the Legendre recurrence and
// cached; suited to smooth integrands on short windows where an adaptive rule
// would only add bookkeeping.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre01(int n);

struct Extrapolation {
    double value = 0;     // limit estimate
    double err_est = 0;   // heuristic error bound, see below
    bool valid = false;   // false when fewer than 2 samples are available
};

// Two-point Richardson extrapolation in 1/kappa over the last two schedule
// entries: fits v(kappa) = v_inf + c/kappa. The error heuristic
// |ext - v_last| + |v_last - v_prev| bounds both the extrapolation step and
// the remaining drift of the raw sequence.
Extrapolation richardson_1k(const std::vector<double>& kappas,
                            const std::vector<double>& values);

} // namespace linkvol
