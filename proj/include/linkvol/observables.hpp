#pragma once
#include <complex>
#include <vector>

#include "linkvol/diagram.hpp"
#include "linkvol/geometry.hpp"
#include "linkvol/kernels.hpp"
#include "linkvol/quadrature.hpp"
#include "linkvol/rep_algebra.hpp"

namespace linkvol {

// Work scheduling for the heavy integrals. Results are independent of the
// mode: every work unit writes its own slot and the final reduction runs in
// fixed index order, so the parallel path is bitwise identical to the serial
// one.
struct ExecConfig {
    bool parallel = true;
};

// Kappa-regulated signed transversal-crossing sum between the projections of
// a matter loop and a geometric loop onto plane k:
//   kappa^3/(16 pi^2) * Int ds dsb cross_k(y'(s), rho'(sb))
//                         * pairing_k(kappa, y(s), rho(sb), k).
// Converges to the full signed crossing sum (twice the linking number) with
// time-order signs as kappa -> infinity.
double crossing_sum_kappa(const Loop4& matter, const Loop4& geo,
                          const Kappa& kap, int plane,
                          const QuadratureConfig& quad = {},
                          const ExecConfig& exec = {});

// Half the regulated crossing sum: one unit per unit of linking.
double sk_kappa(const Loop4& matter, const Loop4& geo, const Kappa& kap,
                int plane, const QuadratureConfig& quad = {},
                const ExecConfig& exec = {});

// Exact counterpart: half the signed crossing sum between the projected
// loops, each crossing weighted by the sign of (geometric time - matter
// time) there. General-position error on a time tie.
int sk_combinatorial(const Loop4& matter, const Loop4& geo, int plane,
                     const CrossOptions& opt = {});

struct SkResult {
    std::vector<double> kappas;
    std::vector<double> values; // summed over geometric components, per kappa
    double extrapolated = 0;    // two-point Richardson limit in 1/kappa
    double err_est = 0;
    bool extrapolation_valid = false;
    int combinatorial = 0;      // exact integer value
};

// Regulated self-linking exponent of matter component matter_index against
// all geometric components, evaluated along a kappa schedule and
// extrapolated.
SkResult sk_numeric(const Hyperlink& h, int matter_index,
                    const std::vector<double>& kappa_schedule, int plane,
                    const QuadratureConfig& quad = {},
                    const ExecConfig& exec = {});

// Product over matter components of the paired holonomy traces
//   Tr_{j+} exp(-pi q sk * calE) + Tr_{j-} exp(+pi q sk * calE),
// with sk_values[u] the linking exponent of matter component u.
std::complex<double> wilson_loop(const Hyperlink& h, double q,
                                 const std::vector<double>& sk_values);

// |double integral over (s, sb) of the cell-localized density|: s runs over
// the matter loop, sb over its displaced copy, with the planar tangent cross
// factor, two time-order factors against the region's t=0 slice, closed-form
// Gaussian-pair factors along the two kept axes of the cell and a numeric
// erf x Gaussian factor along the dropped axis.
double volume_cell_integral(const Loop4& matter, const Loop4& displaced,
                            const Box3& cell, const Kappa& kap, int plane,
                            const QuadratureConfig& quad = {},
                            const ExecConfig& exec = {});

// One finite-kappa, finite-displacement volume evaluation.
struct VolumeApprox {
    double a_plus = 0, a_minus = 0; // xi-weighted tube masses (before ^{1/n})
    std::vector<double> sk;         // regulated exponent per matter component
    std::complex<double> value{};
};

VolumeApprox volume_kappa_approx(const Hyperlink& h,
                                 const RegionPartition& part, double q,
                                 const Kappa& kap, double eps, int plane,
                                 const QuadratureConfig& quad = {},
                                 const ExecConfig& exec = {});

// Exact volume spectrum value from the combinatorial diagram data.
struct VolumeResult {
    std::vector<int> tdp_counts; // half-twists inside the region, per matter
    std::vector<int> sk;         // exact linking exponent per matter
    double plus_weight = 0;      // [sum_u |TDP_u| xi+_u]^{1/n}
    double minus_weight = 0;
    std::complex<double> z_value{}; // product of paired holonomy traces
    std::complex<double> v_value{};
};

// Preconditions: the hyperlink validates, and no matter loop meets the
// region's t=0 slice (precondition error otherwise).
VolumeResult volume_operator(const Hyperlink& h, const Region3& region,
                             double q, int plane,
                             const std::vector<double>& eps_schedule,
                             double boundary_tol,
                             const FrameOptions& opt = {});

// kappa/eps convergence study of the regulated volume against the exact one.
struct LimitRow {
    double kappa = 0, eps = 0;
    std::complex<double> value{};
    std::complex<double> target{};
    double abs_error = 0;
};

struct LimitStudy {
    std::vector<LimitRow> rows; // eps-major, kappa-minor order
    VolumeResult exact;
    std::complex<double> extrapolated{}; // kappa limit at the finest eps
    double err_est = 0;                  // |ext - v_last| + |v_last - v_prev|
    double eps_change = 0; // |ext(finest) - ext(previous eps)|
    bool kappa_converged = false; // errors strictly decrease at finest eps
    bool eps_stable = false;      // eps_change <= err_est
};

struct LimitOptions {
    int plane = 3;
    std::vector<double> ht_eps_schedule;  // half-twist detection schedule
    double boundary_tol = 1e-6;
    double tube_radius = 0.75;
    double max_cell = 1.0;
    QuadratureConfig quad{};
    ExecConfig exec{};
    FrameOptions frame{};
};

LimitStudy limit_study(const Hyperlink& h, const Region3& region, double q,
                       const std::vector<double>& kappa_schedule,
                       const std::vector<double>& eps_schedule,
                       const LimitOptions& opt);

} // namespace linkvol
