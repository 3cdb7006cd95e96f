#pragma once
#include "linkvol/quadrature.hpp"
#include "linkvol/vec.hpp"

namespace linkvol {

// Sharpness parameter of the Gaussian kernel family together with the derived
// normalization constants used by the link and volume integrands.
struct Kappa {
    double kappa = 0;
    double kappa_tilde = 0; // (sqrt(pi)/2)(k/4)(k/sqrt(2pi))^2 (k^2/8pi)^2
    double lambda = 0;      // (k/4pi)(k/sqrt(2pi))^2 (k^2/8pi)^2
    double delta = 0;       // (k/(2 sqrt(2pi)))(k^2/8pi)^2

    static Kappa make(double kappa);
};

// Peak-normalized 1-D Gaussian kernel centered at x:
// (sqrt(kappa)/(2pi)^{1/4}) exp(-kappa^2 (t-x)^2 / 4).
double q_kernel(double kappa, double x, double t);

// Symmetric antiderivative of q_kernel in t (half-line integral minus the
// complementary half): sqrt(pi) (2pi)^{-1/4} kappa^{-1/2} erf(kappa(t-x)/2).
double dinv_q(double kappa, double x, double t);

// L2 pairing <dinv_q(.,s,·), q_kernel(.,z,·)> in closed form:
// (sqrt(2pi)/kappa) erf(kappa (z-s) / (2 sqrt 2)). Antisymmetric under s<->z.
double inner_dinvq_q(double kappa, double s, double z);

// The same pairing evaluated from its defining integral (adaptive quadrature
// over a 12-sigma window); used to validate the closed form.
double inner_dinvq_q_quad(double kappa, double s, double z,
                          const QuadratureConfig& cfg = {});

// 2-D Gaussian-pair overlap <p^a, p^b> = exp(-kappa^2 |a-b|^2 / 8).
double pair2d(double kappa, Vec2 a, Vec2 b);

// Directional pairing of two event points along axis k in {1,2,3}:
//   [2-D overlap of the two spatial coordinates other than k]
// * [sqrt(2pi) erf(kappa (x_k - y_k)/(2 sqrt 2))]   (odd in the k-axis gap)
// * [(sqrt(2pi)/kappa) erf(kappa (y_t - x_t)/(2 sqrt 2))] (time-order factor)
double pairing_k(double kappa, const Point4& x, const Point4& y, int k);

// Residual of the Gaussian product-convolution identity
//   (k^2/8pi)^2 Int exp(-k^2|a-z|^2/8) exp(-k^2|b-z|^2/8) dz
//     = (k^2/16pi) exp(-k^2|a-b|^2/16)
// with the left side evaluated by adaptive 2-D quadrature.
double gaussian_product_identity_residual(double kappa, Vec2 a, Vec2 b,
                                          const QuadratureConfig& cfg = {});

// Finite-kappa smoothed sign:
//   (k^2/4pi) Int inner_dinvq_q(k,s,z) exp(-k^2 (t-z)^2 / 8) dz  ->  sgn(t-s).
// Evaluated numerically over a 12-sigma window around t.
double sgn_limit_value(double kappa, double s, double t,
                       const QuadratureConfig& cfg = {});

} // namespace linkvol
