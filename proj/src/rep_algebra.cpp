#include "linkvol/rep_algebra.hpp"

#include <cmath>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {
const double kPi = 3.14159265358979323846;
const std::complex<double> kI{0.0, 1.0};
} // namespace

Irrep su2_generators(double j) {
    const double two_j = 2.0 * j;
    if (!(j >= 0) || std::floor(two_j) != two_j)
        throw Error(ErrorCategory::domain,
                    "spin must be a nonnegative half-integer");
    Irrep r;
    r.j = j;
    r.dim = static_cast<int>(two_j) + 1;
    r.xi = j * (j + 1.0);

    const int n = r.dim;
    // Ladder matrices in the basis m = j, j-1, ..., -j.
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd j3 = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        const double m = j - a;
        j3(a, a) = m;
        if (a + 1 < n) {
            const double mlo = j - (a + 1);
            jp(a, a + 1) = std::sqrt(j * (j + 1.0) - mlo * (mlo + 1.0));
        }
    }
    const Eigen::MatrixXcd jm = jp.adjoint();
    const Eigen::MatrixXcd j1 = 0.5 * (jp + jm);
    const Eigen::MatrixXcd j2 = -0.5 * kI * (jp - jm);

    // g1 = i*J2, g2 = i*J1, g3 = i*J3: skew-Hermitian with cyclic commutators
    // [g1,g2]=g3 etc., and the half-spin matrices listed in the header.
    r.g1 = kI * j2;
    r.g2 = kI * j1;
    r.g3 = kI * j3;
    r.calE = r.g1 + r.g2 + r.g3;

    // calE = i*H with H Hermitian; SelfAdjointEigenSolver gives real
    // eigenvalues of H = -i*calE, ascending.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(-kI * r.calE);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCategory::internal, "eigendecomposition failed");
    r.spectrum.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return r;
}

double casimir_residual(const Irrep& r) {
    const Eigen::MatrixXcd sum = r.g1 * r.g1 + r.g2 * r.g2 + r.g3 * r.g3 +
                                 r.xi * Eigen::MatrixXcd::Identity(r.dim, r.dim);
    return sum.norm();
}

std::complex<double> trace_exp_calE(const Irrep& r, std::complex<double> theta) {
    std::complex<double> tr = 0.0;
    for (double lam : r.spectrum) tr += std::exp(theta * kI * lam);
    return tr;
}

std::complex<double> wilson_factor(double j_plus, double j_minus, double q,
                                   double sk) {
    const Irrep rp = su2_generators(j_plus);
    const Irrep rm = su2_generators(j_minus);
    const double theta = kPi * q * sk;
    return trace_exp_calE(rp, theta) + trace_exp_calE(rm, -theta);
}

} // namespace linkvol
