// Acceptance gate: nine end-to-end checks of the library against closed
// forms, independent oracles and limit behavior.  Prints one PASS/FAIL line
// per check; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linkvol/diagram.hpp"
#include "linkvol/errors.hpp"
#include "linkvol/kernels.hpp"
#include "linkvol/observables.hpp"
#include "linkvol/rep_algebra.hpp"
#include "linkvol/samples.hpp"
#include "linkvol/scene.hpp"
#include "oracles.hpp"

using namespace linkvol;
using cplx = std::complex<double>;

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool fail(std::string& why, const std::string& msg) {
    if (why.empty()) why = msg;
    return false;
}

// ---------------------------------------------------------------------------
// 1. Representation identities: Casimir, commutators, skew-Hermiticity for
//    spins 0..5, and bit-exact spin-1/2 generator matrices.

bool check_representations(std::string& why) {
    for (int twoj = 0; twoj <= 10; ++twoj) {
        const double j = 0.5 * twoj;
        const Irrep r = su2_generators(j);
        if (casimir_residual(r) > 1e-12)
            return fail(why, "casimir residual above 1e-12 at j=" + std::to_string(j));
        const auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                             const Eigen::MatrixXcd& c) {
            return (a * b - b * a - c).norm();
        };
        if (comm(r.g1, r.g2, r.g3) > 1e-12 || comm(r.g2, r.g3, r.g1) > 1e-12 ||
            comm(r.g3, r.g1, r.g2) > 1e-12)
            return fail(why, "commutator residual above 1e-12 at j=" + std::to_string(j));
        if ((r.g1 + r.g1.adjoint()).norm() > 1e-14 ||
            (r.g2 + r.g2.adjoint()).norm() > 1e-14 ||
            (r.g3 + r.g3.adjoint()).norm() > 1e-14)
            return fail(why, "skew-Hermiticity residual above 1e-14 at j=" + std::to_string(j));
    }
    const Irrep h = su2_generators(0.5);
    const cplx I(0, 1);
    const bool exact = h.g1(0, 0) == cplx(0) && h.g1(0, 1) == cplx(0.5) &&
                       h.g1(1, 0) == cplx(-0.5) && h.g1(1, 1) == cplx(0) &&
                       h.g2(0, 0) == cplx(0) && h.g2(0, 1) == 0.5 * I &&
                       h.g2(1, 0) == 0.5 * I && h.g2(1, 1) == cplx(0) &&
                       h.g3(0, 0) == 0.5 * I && h.g3(0, 1) == cplx(0) &&
                       h.g3(1, 0) == cplx(0) && h.g3(1, 1) == -0.5 * I;
    if (!exact) return fail(why, "spin-1/2 generators are not bit-exact");
    return true;
}

// ---------------------------------------------------------------------------
// 2. Gaussian product-convolution identity: quadrature residual below 1e-9
//    for kappa in {1,4,16} x 50 random point pairs in the unit box.

bool check_gaussian_identity(std::string& why) {
    std::mt19937_64 rng(20240817);
    double worst = 0;
    for (double kappa : {1.0, 4.0, 16.0}) {
        for (int trial = 0; trial < 50; ++trial) {
            const Vec2 a{uniform01(rng), uniform01(rng)};
            const Vec2 b{uniform01(rng), uniform01(rng)};
            const double r = gaussian_product_identity_residual(kappa, a, b);
            worst = std::max(worst, r);
        }
    }
    if (worst > 1e-9)
        return fail(why, "worst residual " + std::to_string(worst) + " above 1e-9");
    return true;
}

// ---------------------------------------------------------------------------
// 3. Smoothed-sign limit: |value - sgn(t-s)| strictly decreasing over the
//    sharpness schedule, and at most 0.05 at kappa=32 when |t-s| >= 0.5.

bool check_sign_limit(std::string& why) {
    const double s = 0.0;
    for (double gap : {0.25, 0.5, 1.0}) {
        for (double dir : {1.0, -1.0}) {
            const double t = s + dir * gap;
            double prev = 2.0;
            double last = 0;
            for (double kappa : {4.0, 8.0, 16.0, 32.0}) {
                const double err = std::abs(sgn_limit_value(kappa, s, t) - dir);
                if (err >= prev)
                    return fail(why, "error not decreasing at gap " + std::to_string(gap));
                prev = err;
                last = err;
            }
            if (gap >= 0.5 && last > 0.05)
                return fail(why, "final error " + std::to_string(last) +
                                     " above 0.05 at gap " + std::to_string(gap));
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 4. Linking exponent: numeric extrapolation vs exact count on a split pair
//    (0), a linked pair (1) and a doubly wound pair (2); within 0.1 and
//    rounding exactly.

bool check_sk_agreement(std::string& why) {
    const struct {
        SceneFile scene;
        int expected_magnitude;
    } cases[] = {{samples::scene_split_pair(), 0},
                 {samples::scene_hopf_pair(), 1},
                 {samples::scene_double_wind(), 2}};
    for (const auto& c : cases) {
        const Hyperlink h = c.scene.hyperlink();
        const SkResult r = sk_numeric(h, 0, c.scene.kappa_schedule, c.scene.plane);
        if (std::abs(r.combinatorial) != c.expected_magnitude)
            return fail(why, c.scene.name + ": exact count " +
                                 std::to_string(r.combinatorial) + ", expected |.| = " +
                                 std::to_string(c.expected_magnitude));
        if (!r.extrapolation_valid)
            return fail(why, c.scene.name + ": extrapolation invalid");
        if (std::abs(r.extrapolated - r.combinatorial) > 0.1)
            return fail(why, c.scene.name + ": extrapolated " +
                                 std::to_string(r.extrapolated) + " not within 0.1 of " +
                                 std::to_string(r.combinatorial));
        if (std::llround(r.extrapolated) != r.combinatorial)
            return fail(why, c.scene.name + ": rounding mismatch");
    }
    return true;
}

// ---------------------------------------------------------------------------
// 5. Plane invariance of the summed algebraic crossing number between the
//    linked pair's spatial knots, with deterministic jitter where a
//    projection is not in general position.

int summed_crossing_signs(const SceneFile& scene, int plane, bool* jittered) {
    for (std::uint64_t seed = 0; seed <= 4; ++seed) {
        const SceneFile use = seed == 0 ? scene : jitter_scene(scene, seed);
        try {
            const Hyperlink h = use.hyperlink();
            const PlanarLoop a = project_plane(project_time(h.matter[0].loop), plane);
            const PlanarLoop b = project_plane(project_time(h.geometric[0]), plane);
            int sum = 0;
            for (const Crossing& c : find_crossings(a, b)) sum += c.sign;
            if (jittered) *jittered = seed != 0;
            return sum;
        } catch (const Error& e) {
            if (e.category() != ErrorCategory::general_position) throw;
        }
    }
    throw Error(ErrorCategory::general_position,
                "no jitter seed produced a generic projection");
}

bool check_plane_invariance(std::string& why) {
    for (const SceneFile& scene :
         {samples::scene_hopf_pair(), samples::scene_axis_hopf()}) {
        bool jit1 = false, jit2 = false, jit3 = false;
        const int s1 = summed_crossing_signs(scene, 1, &jit1);
        const int s2 = summed_crossing_signs(scene, 2, &jit2);
        const int s3 = summed_crossing_signs(scene, 3, &jit3);
        if (s1 != s2 || s2 != s3)
            return fail(why, scene.name + ": sums " + std::to_string(s1) + "/" +
                                 std::to_string(s2) + "/" + std::to_string(s3) +
                                 " differ across planes");
        if (std::abs(s1) != 2)
            return fail(why, scene.name + ": |sum| = " + std::to_string(std::abs(s1)) +
                                 ", expected 2 for a singly linked pair");
    }
    // The axis-aligned pair exercises the jitter fallback in at least one
    // plane; the tilted pair must not need it anywhere.
    bool jit = false;
    summed_crossing_signs(samples::scene_hopf_pair(), 1, &jit);
    if (jit) return fail(why, "tilted pair unexpectedly required jitter");
    return true;
}

// ---------------------------------------------------------------------------
// 6. Closed-form volume on the reference configuration, checked against an
//    independent eigendecomposition of the hand-written spin-1/2 aggregate
//    generator; a region away from both half-twists gives exactly zero.

bool check_volume_closed_form(std::string& why) {
    const SceneFile s = samples::scene_golden_volume();
    const Hyperlink h = s.hyperlink();
    const VolumeResult r = volume_operator(h, s.region(), s.charge, s.plane,
                                           s.eps_schedule, s.boundary_tol);
    if (r.tdp_counts.size() != 1 || r.tdp_counts[0] != 2)
        return fail(why, "expected exactly 2 counted half-twists");
    if (r.sk.size() != 1 || std::abs(r.sk[0]) != 1)
        return fail(why, "expected |sk| = 1");

    // Independent arithmetic: hand-written aggregate generator, numeric
    // eigendecomposition, explicit trace sums.
    const cplx I(0, 1);
    Eigen::Matrix2cd calE;
    calE << 0.5 * I, cplx(0.5) + 0.5 * I, cplx(-0.5) + 0.5 * I, -0.5 * I;
    const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(calE);
    if (es.info() != Eigen::Success) return fail(why, "eigensolver failed");
    const double theta = M_PI * s.charge * r.sk[0];
    cplx tr_plus = 0, tr_minus = 0;
    for (int i = 0; i < 2; ++i) {
        tr_plus += std::exp(-theta * es.eigenvalues()[i]);
        tr_minus += std::exp(theta * es.eigenvalues()[i]);
    }
    const cplx ref = 2.0 * std::cos(std::sqrt(3.0) * M_PI / 2.0);
    if (std::abs(tr_plus - ref) > 1e-10 || std::abs(tr_minus - ref) > 1e-10)
        return fail(why, "trace factors disagree with 2 cos(sqrt(3) pi / 2)");
    const double weight = 2.0 * 0.75; // two half-twists, spin-1/2 Casimir 3/4
    const cplx v_indep =
        s.charge * s.charge * std::pow(M_PI, 1.5) / 2.0 * weight * (tr_plus + tr_minus);
    if (std::abs(r.v_value - v_indep) > 1e-10)
        return fail(why, "volume differs from independent arithmetic by " +
                             std::to_string(std::abs(r.v_value - v_indep)));

    Region3 moved;
    moved.boxes = {Box3{Vec3{4, 4, 4}, Vec3{5, 5, 5}}};
    const VolumeResult r0 = volume_operator(h, moved, s.charge, s.plane,
                                            s.eps_schedule, s.boundary_tol);
    if (!(r0.v_value.real() == 0.0 && r0.v_value.imag() == 0.0))
        return fail(why, "moved region did not give exactly zero");
    return true;
}

// ---------------------------------------------------------------------------
// 7. Regulated-volume convergence: errors decrease along the sharpness
//    schedule at every displacement, the extrapolated value lands within 5%
//    of the closed form, and halving the displacement moves the extrapolation
//    by less than its own error estimate.

bool check_volume_convergence(std::string& why) {
    const SceneFile s = samples::scene_golden_volume();
    const Hyperlink h = s.hyperlink();
    LimitOptions opt;
    opt.plane = s.plane;
    opt.ht_eps_schedule = s.eps_schedule;
    opt.boundary_tol = s.boundary_tol;
    opt.tube_radius = s.tube_radius;
    opt.max_cell = s.max_cell;
    const LimitStudy st = limit_study(h, s.region(), s.charge, s.kappa_schedule,
                                      s.vol_eps_schedule, opt);
    const std::size_t nk = s.kappa_schedule.size();
    if (st.rows.size() != nk * s.vol_eps_schedule.size())
        return fail(why, "unexpected row count");
    for (std::size_t e = 0; e < s.vol_eps_schedule.size(); ++e) {
        for (std::size_t k = 1; k < nk; ++k) {
            const double prev = st.rows[e * nk + k - 1].abs_error;
            const double cur = st.rows[e * nk + k].abs_error;
            if (!(cur < prev))
                return fail(why, "error not decreasing along the sharpness schedule");
        }
    }
    const double rel =
        std::abs(st.extrapolated - st.exact.v_value) / std::abs(st.exact.v_value);
    if (rel > 0.05)
        return fail(why, "extrapolated value off by " + std::to_string(100 * rel) + "%");
    if (!(st.eps_change <= st.err_est))
        return fail(why, "displacement halving moved the limit more than its error bound");
    return true;
}

// ---------------------------------------------------------------------------
// 8. Proportionality: for random equal colorings, v/z equals
//    q^2 pi^{3/2}/2 * sum of |half-twist count| * Casimir over matter loops.

bool check_proportionality(std::string& why) {
    std::mt19937_64 rng(424242);
    const auto draw_spin = [&rng] { return 0.5 * (1 + static_cast<int>(rng() % 5)); };
    for (int trial = 0; trial < 10; ++trial) {
        SceneFile s =
            trial % 2 == 0 ? samples::scene_golden_volume() : samples::scene_pair_volume();
        for (SceneMatter& m : s.matter) {
            const double j = draw_spin();
            m.j_plus = j;
            m.j_minus = j;
        }
        const Hyperlink h = s.hyperlink();
        const VolumeResult r = volume_operator(h, s.region(), s.charge, s.plane,
                                               s.eps_schedule, s.boundary_tol);
        double sum = 0;
        for (std::size_t u = 0; u < h.matter.size(); ++u)
            sum += std::abs(r.tdp_counts[u]) * h.matter[u].j_plus * (h.matter[u].j_plus + 1);
        const cplx expect =
            s.charge * s.charge * std::pow(M_PI, 1.5) / 2.0 * sum;
        const cplx ratio = r.v_value / r.z_value;
        if (std::abs(ratio - expect) > 1e-9 * std::abs(expect))
            return fail(why, s.name + " trial " + std::to_string(trial) +
                                 ": ratio off by " +
                                 std::to_string(std::abs(ratio - expect)));
    }
    return true;
}

// ---------------------------------------------------------------------------
// 9. Crossing detector vs a brute-force chord-subdivision oracle on 25 random
//    polyline pairs: same count, same signs, same over-strand.

bool check_crossing_oracle(std::string& why) {
    std::mt19937_64 rng(987654321);
    int accepted = 0;
    int attempts = 0;
    while (accepted < 25) {
        if (++attempts > 200) return fail(why, "too many degenerate random pairs");
        const int na = 8 + static_cast<int>(rng() % 9);
        const int nb = 8 + static_cast<int>(rng() % 9);
        const Vec3 center{0.8 * (uniform01(rng) - 0.5), 0.8 * (uniform01(rng) - 0.5),
                          0.8 * (uniform01(rng) - 0.5)};
        const Loop4 a = make_loop(oracle::random_loop(rng, na, 0.1));
        const Loop4 b = make_loop(oracle::random_loop(rng, nb, 0.7, center));
        const PlanarLoop pa = project_plane(project_time(a), 3);
        const PlanarLoop pb = project_plane(project_time(b), 3);
        std::vector<Crossing> got;
        try {
            got = find_crossings(pa, pb);
        } catch (const Error& e) {
            if (e.category() == ErrorCategory::general_position) continue; // resample
            throw;
        }
        const std::vector<oracle::ChordCrossing> expect = oracle::chord_crossings(pa, pb);
        if (got.size() != expect.size())
            return fail(why, "pair " + std::to_string(accepted) + ": count " +
                                 std::to_string(got.size()) + " vs oracle " +
                                 std::to_string(expect.size()));
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (got[i].sign != expect[i].sign || got[i].a_over != expect[i].a_over)
                return fail(why, "pair " + std::to_string(accepted) + ": sign mismatch");
            if (std::abs(got[i].s_a - expect[i].s_a) > 1e-9 ||
                std::abs(got[i].s_b - expect[i].s_b) > 1e-9)
                return fail(why, "pair " + std::to_string(accepted) + ": position mismatch");
        }
        ++accepted;
    }
    return true;
}

struct CriterionSpec {
    const char* label;
    double time_budget_s; // 0 = unlimited
    bool (*run)(std::string&);
};

}  // namespace

int main() {
    const CriterionSpec criteria[] = {
        {"representation identities and exact spin-half matrices", 1.0,
         check_representations},
        {"Gaussian product-convolution identity residuals", 10.0, check_gaussian_identity},
        {"smoothed-sign limit monotone convergence", 60.0, check_sign_limit},
        {"linking exponent numeric/exact agreement on three pairs", 300.0,
         check_sk_agreement},
        {"plane invariance of summed crossing signs (with jitter fallback)", 0.0,
         check_plane_invariance},
        {"closed-form volume vs independent eigendecomposition", 0.0,
         check_volume_closed_form},
        {"regulated volume convergence and displacement stability", 600.0,
         check_volume_convergence},
        {"volume/holonomy proportionality under random colorings", 0.0,
         check_proportionality},
        {"crossing detector vs brute-force chord oracle", 0.0, check_crossing_oracle},
    };

    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const CriterionSpec& c = criteria[i];
        std::string why;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(why);
        } catch (const Error& e) {
            why = std::string("error [") + category_name(e.category()) + "] " + e.what();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (ok && c.time_budget_s > 0 && elapsed > c.time_budget_s) {
            ok = false;
            why = "exceeded time budget of " + std::to_string(c.time_budget_s) + " s";
        }
        std::printf("[%zu/9] %-62s %s (%.2f s)%s%s\n", i + 1, c.label,
                    ok ? "PASS" : "FAIL", elapsed, why.empty() ? "" : " -- ",
                    why.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all 9 criteria passed\n");
    else
        std::printf("acceptance: %d criteria failed\n", failures);
    return failures;
}
