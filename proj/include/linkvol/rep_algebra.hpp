#pragma once
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace linkvol {

// Spin-j representation data: three skew-Hermitian generator matrices obeying
// the cyclic commutation relations [g1,g2]=g3, [g2,g3]=g1, [g3,g1]=g2, the
// Casimir scalar xi = j(j+1), and the aggregate generator calE = g1+g2+g3
// whose spectrum is {i*sqrt(3)*m : m = -j..j}.
struct Irrep {
    double j = 0;
    int dim = 1;
    double xi = 0;
    Eigen::MatrixXcd g1, g2, g3, calE;
    // Real eigenvalues of -i*calE (ascending), each ~ sqrt(3)*m.
    std::vector<double> spectrum;
};

// Build the spin-j irrep from the standard ladder construction, arranged so
// that g3 is diagonal with entries i*m and the j=1/2 matrices come out as
//   g1 = [[0, 1/2], [-1/2, 0]],
//   g2 = [[0, i/2], [ i/2, 0]],
//   g3 = [[i/2, 0], [0, -i/2]]
// exactly (all entries representable in binary).
Irrep su2_generators(double j);

// Frobenius norm of g1^2 + g2^2 + g3^2 + j(j+1) I (zero in exact arithmetic).
double casimir_residual(const Irrep& r);

// Trace of exp(theta * calE), computed from the eigendecomposition of the
// skew-Hermitian calE: sum over the spectrum of exp(theta * i * lambda_m).
// Even in theta because the spectrum is symmetric about zero.
std::complex<double> trace_exp_calE(const Irrep& r, std::complex<double> theta);

// One matter component's holonomy trace pair:
//   Tr_{j+} exp(pi q sk * calE) + Tr_{j-} exp(-pi q sk * calE).
// The spectrum symmetry makes the result independent of the overall exponent
// sign; both sign conventions in use yield this same value.
std::complex<double> wilson_factor(double j_plus, double j_minus, double q,
                                   double sk);

} // namespace linkvol
