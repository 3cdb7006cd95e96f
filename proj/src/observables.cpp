#include "linkvol/observables.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <string>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {

const double kPi = std::acos(-1.0);
const double kSqrt2 = std::sqrt(2.0);

// Runs work(0..n-1) with each unit writing only its own state; exceptions are
// captured and rethrown after the join so OpenMP never terminates on them.
void run_units(int n, const std::function<void(int)>& work,
               const ExecConfig& exec) {
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic) if (exec.parallel)
    for (int i = 0; i < n; ++i) {
        try {
            work(i);
        } catch (...) {
#pragma omp critical
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
}

void check_plane(int plane) {
    if (plane < 1 || plane > 3)
        throw Error(ErrorCategory::domain,
                    "projection plane index must be 1, 2 or 3, got " +
                        std::to_string(plane));
}

// Distance between 2-D segments; zero when they properly intersect.
double seg2_dist(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                 const Vec2& b1) {
    const Vec2 u = a1 - a0, v = b1 - b0, w = b0 - a0;
    const double den = cross2(u, v);
    if (den != 0) {
        const double t = cross2(w, v) / den;
        const double r = cross2(w, u) / den;
        if (t >= 0 && t <= 1 && r >= 0 && r <= 1) return 0.0;
    }
    auto point_seg = [](const Vec2& p, const Vec2& s0, const Vec2& s1) {
        const Vec2 d = s1 - s0;
        const double len2 = dot(d, d);
        double t = len2 > 0 ? dot(p - s0, d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return norm(p - (s0 + t * d));
    };
    return std::min({point_seg(a0, b0, b1), point_seg(a1, b0, b1),
                     point_seg(b0, a0, a1), point_seg(b1, a0, a1)});
}

// Gap between a coordinate range and an interval along one axis.
double axis_gap(double lo, double hi, double s0, double s1) {
    const double smin = std::min(s0, s1), smax = std::max(s0, s1);
    return std::max({lo - smax, smin - hi, 0.0});
}

// Closed form of the product of two axis Gaussians integrated over a cell
// edge [lo, hi]:
//   Int exp(-k^2 (ya - z)^2 / 8) exp(-k^2 (qa - z)^2 / 8) dz
//     = exp(-k^2 (ya-qa)^2 / 16) (sqrt(pi)/k)
//       [erf(k (hi - m)/2) - erf(k (lo - m)/2)],   m = (ya + qa)/2.
double axis_factor(double kappa, double ya, double qa, double lo, double hi) {
    const double m = 0.5 * (ya + qa);
    const double d = ya - qa;
    return std::exp(-kappa * kappa * d * d / 16) * (std::sqrt(kPi) / kappa) *
           (std::erf(kappa * (hi - m) / 2) - std::erf(kappa * (lo - m) / 2));
}

std::complex<double> richardson_complex(const std::vector<double>& ks,
                                        const std::vector<std::complex<double>>& vs) {
    const size_t n = vs.size();
    const double k1 = ks[n - 2], k2 = ks[n - 1];
    return (k2 * vs[n - 1] - k1 * vs[n - 2]) / (k2 - k1);
}

} // namespace

double crossing_sum_kappa(const Loop4& matter, const Loop4& geo,
                          const Kappa& kap, int plane,
                          const QuadratureConfig& quad,
                          const ExecConfig& exec) {
    check_plane(plane);
    const int a = plane % 3, b = (plane + 1) % 3;
    const double kappa = kap.kappa;
    const int nm = matter.nseg(), ng = geo.nseg();
    // exp(-kappa^2 d^2 / 8) <= exp(-45) beyond this squared planar distance.
    const double prune2 = 8.0 * 45.0 / (kappa * kappa);

    std::vector<double> unit(nm, 0.0);
    auto work = [&](int i) {
        const Point4 p0 = matter.v[i], p1 = matter.vert(i + 1);
        const Vec3 dp = p1.spatial() - p0.spatial();
        const Vec2 pa0{p0.spatial()[a], p0.spatial()[b]};
        const Vec2 pa1{p1.spatial()[a], p1.spatial()[b]};
        double acc = 0;
        for (int j = 0; j < ng; ++j) {
            const Point4 q0 = geo.v[j], q1 = geo.vert(j + 1);
            const Vec3 dq = q1.spatial() - q0.spatial();
            const double cr = dp[a] * dq[b] - dp[b] * dq[a];
            if (cr == 0) continue;
            const Vec2 qa0{q0.spatial()[a], q0.spatial()[b]};
            const Vec2 qa1{q1.spatial()[a], q1.spatial()[b]};
            const double gap = seg2_dist(pa0, pa1, qa0, qa1);
            if (gap * gap > prune2) continue;
            const double I = integrate2d(
                [&](double s, double sb) {
                    const Point4 x = p0 + s * (p1 - p0);
                    const Point4 y = q0 + sb * (q1 - q0);
                    return pairing_k(kappa, x, y, plane);
                },
                0, 1, 0, 1, quad);
            acc += cr * I;
        }
        unit[i] = acc;
    };
    run_units(nm, work, exec);

    double total = 0;
    for (int i = 0; i < nm; ++i) total += unit[i];
    return kappa * kappa * kappa / (16 * kPi * kPi) * total;
}

double sk_kappa(const Loop4& matter, const Loop4& geo, const Kappa& kap,
                int plane, const QuadratureConfig& quad,
                const ExecConfig& exec) {
    // The projected diagram carries two transversal crossings per unit of
    // linking, so the exponent normalizes the full regulated sum by 2.
    return 0.5 * crossing_sum_kappa(matter, geo, kap, plane, quad, exec);
}

int sk_combinatorial(const Loop4& matter, const Loop4& geo, int plane,
                     const CrossOptions& opt) {
    check_plane(plane);
    const PlanarLoop pm = project_plane(project_time(matter), plane);
    const PlanarLoop pg = project_plane(project_time(geo), plane);
    int sum = 0;
    for (const Crossing& c : find_crossings(pm, pg, opt)) {
        const double dt = c.time_b - c.time_a; // geometric minus matter
        if (std::abs(dt) < 1e-12)
            throw Error(ErrorCategory::general_position,
                        "time tie at a matter/geometric crossing");
        sum += c.sign * (dt > 0 ? 1 : -1);
    }
    if (sum % 2 != 0)
        throw Error(ErrorCategory::general_position,
                    "odd signed crossing sum between closed loops");
    return sum / 2;
}

SkResult sk_numeric(const Hyperlink& h, int matter_index,
                    const std::vector<double>& kappa_schedule, int plane,
                    const QuadratureConfig& quad, const ExecConfig& exec) {
    if (matter_index < 0 ||
        matter_index >= static_cast<int>(h.matter.size()))
        throw Error(ErrorCategory::precondition,
                    "matter component index out of range");
    if (kappa_schedule.empty())
        throw Error(ErrorCategory::precondition, "empty kappa schedule");
    for (size_t k = 1; k < kappa_schedule.size(); ++k)
        if (kappa_schedule[k] <= kappa_schedule[k - 1])
            throw Error(ErrorCategory::precondition,
                        "kappa schedule must be strictly increasing");
    const Loop4& m = h.matter[matter_index].loop;

    SkResult out;
    out.kappas = kappa_schedule;
    for (double kv : kappa_schedule) {
        const Kappa kap = Kappa::make(kv);
        double v = 0;
        for (const Loop4& g : h.geometric)
            v += sk_kappa(m, g, kap, plane, quad, exec);
        out.values.push_back(v);
    }
    const Extrapolation ext = richardson_1k(out.kappas, out.values);
    out.extrapolated = ext.value;
    out.err_est = ext.err_est;
    out.extrapolation_valid = ext.valid;
    for (const Loop4& g : h.geometric)
        out.combinatorial += sk_combinatorial(m, g, plane);
    return out;
}

std::complex<double> wilson_loop(const Hyperlink& h, double q,
                                 const std::vector<double>& sk_values) {
    if (sk_values.size() != h.matter.size())
        throw Error(ErrorCategory::precondition,
                    "need one linking exponent per matter component");
    std::complex<double> z{1.0, 0.0};
    for (size_t u = 0; u < h.matter.size(); ++u)
        z *= wilson_factor(h.matter[u].j_plus, h.matter[u].j_minus, q,
                           sk_values[u]);
    return z;
}

double volume_cell_integral(const Loop4& matter, const Loop4& displaced,
                            const Box3& cell, const Kappa& kap, int plane,
                            const QuadratureConfig& quad,
                            const ExecConfig& exec) {
    check_plane(plane);
    const int ka = plane % 3, kb = (plane + 1) % 3, kd = plane - 1;
    const double kappa = kap.kappa;
    const double lo_a = cell.lo[ka], hi_a = cell.hi[ka];
    const double lo_b = cell.lo[kb], hi_b = cell.hi[kb];
    const double lo_d = cell.lo[kd], hi_d = cell.hi[kd];
    // The slowest factor decays like exp(-kappa^2 d^2/16); exp(-45) ~ 3e-20.
    const double prune2 = 16.0 * 45.0 / (kappa * kappa);
    // The dropped-axis Gaussian exp(-kappa^2 u^2/8) is below 3e-32 beyond
    // |u| = 24/kappa; the erf x Gaussian window factor is evaluated by a
    // fixed Gauss rule, which is spectrally accurate for this analytic
    // integrand on the clamped window.
    const double window = 24.0 / kappa;
    const GaussRule& gl = gauss_legendre01(24);

    const int nm = matter.nseg(), nd = displaced.nseg();
    std::vector<double> unit(nm, 0.0);
    auto work = [&](int i) {
        const Point4 p0 = matter.v[i], p1 = matter.vert(i + 1);
        const Vec3 sp0 = p0.spatial(), sp1 = p1.spatial();
        const Vec3 dp = sp1 - sp0;
        const double ga = axis_gap(lo_a, hi_a, sp0[ka], sp1[ka]);
        const double gb = axis_gap(lo_b, hi_b, sp0[kb], sp1[kb]);
        if (ga * ga + gb * gb > prune2) return;
        double acc = 0;
        for (int j = 0; j < nd; ++j) {
            const Point4 q0 = displaced.v[j], q1 = displaced.vert(j + 1);
            const Vec3 sq0 = q0.spatial(), sq1 = q1.spatial();
            const Vec3 dq = sq1 - sq0;
            const double ea = axis_gap(lo_a, hi_a, sq0[ka], sq1[ka]);
            const double eb = axis_gap(lo_b, hi_b, sq0[kb], sq1[kb]);
            const double ed = axis_gap(lo_d, hi_d, sq0[kd], sq1[kd]);
            if (ea * ea + eb * eb + ed * ed > prune2) continue;
            const double cr = dp[ka] * dq[kb] - dp[kb] * dq[ka];
            if (cr == 0) continue;
            const double I = integrate2d(
                [&](double s, double sb) {
                    const Point4 y = p0 + s * (p1 - p0);
                    const Point4 qq = q0 + sb * (q1 - q0);
                    const Vec3 ys = y.spatial(), qs = qq.spatial();
                    const double tf_s = inner_dinvq_q(kappa, y.t, 0.0);
                    const double tf_sb = inner_dinvq_q(kappa, qq.t, 0.0);
                    const double fa =
                        axis_factor(kappa, ys[ka], qs[ka], lo_a, hi_a);
                    const double fb =
                        axis_factor(kappa, ys[kb], qs[kb], lo_b, hi_b);
                    const double wlo = std::max(lo_d, qs[kd] - window);
                    const double whi = std::min(hi_d, qs[kd] + window);
                    if (wlo >= whi) return 0.0;
                    double fd = 0;
                    for (size_t t = 0; t < gl.x.size(); ++t) {
                        const double z = wlo + (whi - wlo) * gl.x[t];
                        const double leg =
                            std::erf(kappa * (ys[kd] - z) / (2 * kSqrt2));
                        const double gs = qs[kd] - z;
                        fd += gl.w[t] * leg *
                              std::exp(-kappa * kappa * gs * gs / 8);
                    }
                    fd *= (whi - wlo) * std::sqrt(2 * kPi);
                    return tf_s * tf_sb * fa * fb * fd;
                },
                0, 1, 0, 1, quad);
            acc += cr * I;
        }
        unit[i] = acc;
    };
    run_units(nm, work, exec);

    double total = 0;
    for (int i = 0; i < nm; ++i) total += unit[i];
    return std::abs(total);
}

VolumeApprox volume_kappa_approx(const Hyperlink& h,
                                 const RegionPartition& part, double q,
                                 const Kappa& kap, double eps, int plane,
                                 const QuadratureConfig& quad,
                                 const ExecConfig& exec) {
    const int n = static_cast<int>(h.matter.size());
    if (n == 0)
        throw Error(ErrorCategory::precondition,
                    "hyperlink has no matter components");
    std::vector<Loop4> displaced;
    std::vector<Irrep> rp, rm;
    for (const MatterLoop& m : h.matter) {
        displaced.push_back(displace_loop(m.loop, m.frame, eps));
        rp.push_back(su2_generators(m.j_plus));
        rm.push_back(su2_generators(m.j_minus));
    }

    std::vector<double> mass(n, 0.0);
    for (const Cell& c : part.cells) {
        for (int u = 0; u < n; ++u) {
            const bool mine =
                c.tag == u ||
                (c.tag == Cell::kBoundary &&
                 std::find(c.straddled.begin(), c.straddled.end(), u) !=
                     c.straddled.end());
            if (!mine) continue;
            mass[u] += kap.kappa_tilde *
                       volume_cell_integral(h.matter[u].loop, displaced[u],
                                            c.box, kap, plane, quad, exec);
        }
    }

    VolumeApprox out;
    for (int u = 0; u < n; ++u) {
        out.a_plus += mass[u] * rp[u].xi;
        out.a_minus += mass[u] * rm[u].xi;
        double sk = 0;
        for (const Loop4& g : h.geometric)
            sk += sk_kappa(h.matter[u].loop, g, kap, plane, quad, exec);
        out.sk.push_back(sk);
    }
    const double wp = std::pow(out.a_plus, 1.0 / n);
    const double wm = std::pow(out.a_minus, 1.0 / n);
    std::complex<double> prod{1.0, 0.0};
    for (int u = 0; u < n; ++u) {
        const double theta = kPi * q * out.sk[u];
        prod *= wp * trace_exp_calE(rp[u], {-theta, 0.0}) +
                wm * trace_exp_calE(rm[u], {theta, 0.0});
    }
    out.value = q * q * prod;
    return out;
}

VolumeResult volume_operator(const Hyperlink& h, const Region3& region,
                             double q, int plane,
                             const std::vector<double>& eps_schedule,
                             double boundary_tol, const FrameOptions& opt) {
    validate_region(region);
    const int n = static_cast<int>(h.matter.size());
    if (n == 0)
        throw Error(ErrorCategory::precondition,
                    "hyperlink has no matter components");

    // The region lives in the t=0 slice; matter loops must avoid it there.
    // A segment at constant zero time is tested exactly against each box; a
    // segment whose time changes sign meets the slice in one point.
    for (int u = 0; u < n; ++u) {
        const Loop4& l = h.matter[u].loop;
        for (int i = 0; i < l.nseg(); ++i) {
            const Point4 a = l.v[i], b = l.vert(i + 1);
            bool meets = false;
            if (a.t == 0 && b.t == 0) {
                for (const Box3& box : region.boxes)
                    if (segment_box_distance(a.spatial(), b.spatial(), box) <
                        1e-12)
                        meets = true;
            } else if ((a.t <= 0 && b.t >= 0) || (a.t >= 0 && b.t <= 0)) {
                const double tau = a.t / (a.t - b.t);
                const Vec3 p =
                    a.spatial() + tau * (b.spatial() - a.spatial());
                for (const Box3& box : region.boxes)
                    if (p.x >= box.lo.x - 1e-12 && p.x <= box.hi.x + 1e-12 &&
                        p.y >= box.lo.y - 1e-12 && p.y <= box.hi.y + 1e-12 &&
                        p.z >= box.lo.z - 1e-12 && p.z <= box.hi.z + 1e-12)
                        meets = true;
            }
            if (meets)
                throw Error(ErrorCategory::precondition,
                            "matter component " + std::to_string(u) +
                                " meets the region's t=0 slice");
        }
    }

    VolumeResult out;
    double sum_plus = 0, sum_minus = 0;
    std::vector<Irrep> rp, rm;
    for (int u = 0; u < n; ++u) {
        const MatterLoop& m = h.matter[u];
        rp.push_back(su2_generators(m.j_plus));
        rm.push_back(su2_generators(m.j_minus));
        const int count = tdp(m.loop, m.frame, region, plane, eps_schedule,
                              boundary_tol, opt);
        out.tdp_counts.push_back(count);
        int sk = 0;
        for (const Loop4& g : h.geometric)
            sk += sk_combinatorial(m.loop, g, plane, opt.cross);
        out.sk.push_back(sk);
        sum_plus += count * rp[u].xi;
        sum_minus += count * rm[u].xi;
    }
    out.plus_weight = std::pow(sum_plus, 1.0 / n);
    out.minus_weight = std::pow(sum_minus, 1.0 / n);

    std::complex<double> prod{1.0, 0.0};
    std::vector<double> sk_real(out.sk.begin(), out.sk.end());
    for (int u = 0; u < n; ++u) {
        const double theta = kPi * q * out.sk[u];
        prod *= out.plus_weight * trace_exp_calE(rp[u], {-theta, 0.0}) +
                out.minus_weight * trace_exp_calE(rm[u], {theta, 0.0});
    }
    out.v_value = q * q * (std::pow(kPi, 1.5) / 2.0) * prod;
    out.z_value = wilson_loop(h, q, sk_real);
    return out;
}

LimitStudy limit_study(const Hyperlink& h, const Region3& region, double q,
                       const std::vector<double>& kappa_schedule,
                       const std::vector<double>& eps_schedule,
                       const LimitOptions& opt) {
    if (kappa_schedule.empty() || eps_schedule.empty())
        throw Error(ErrorCategory::precondition,
                    "kappa and eps schedules must be non-empty");
    for (size_t k = 1; k < kappa_schedule.size(); ++k)
        if (kappa_schedule[k] <= kappa_schedule[k - 1])
            throw Error(ErrorCategory::precondition,
                        "kappa schedule must be strictly increasing");
    for (size_t k = 1; k < eps_schedule.size(); ++k)
        if (eps_schedule[k] >= eps_schedule[k - 1])
            throw Error(ErrorCategory::precondition,
                        "eps schedule must be strictly decreasing");

    LimitStudy out;
    out.exact = volume_operator(h, region, q, opt.plane, opt.ht_eps_schedule,
                                opt.boundary_tol, opt.frame);
    const RegionPartition part =
        partition_region(region, h, opt.tube_radius, opt.max_cell);

    std::vector<std::complex<double>> per_eps_ext;
    std::vector<double> last_errs;
    double last_err_est = 0;
    for (double eps : eps_schedule) {
        std::vector<std::complex<double>> vals;
        std::vector<double> errs;
        for (double kv : kappa_schedule) {
            const VolumeApprox ap =
                volume_kappa_approx(h, part, q, Kappa::make(kv), eps,
                                    opt.plane, opt.quad, opt.exec);
            LimitRow row;
            row.kappa = kv;
            row.eps = eps;
            row.value = ap.value;
            row.target = out.exact.v_value;
            row.abs_error = std::abs(ap.value - out.exact.v_value);
            out.rows.push_back(row);
            vals.push_back(ap.value);
            errs.push_back(row.abs_error);
        }
        if (vals.size() >= 2) {
            const std::complex<double> ext =
                richardson_complex(kappa_schedule, vals);
            per_eps_ext.push_back(ext);
            last_err_est = std::abs(ext - vals.back()) +
                           std::abs(vals.back() - vals[vals.size() - 2]);
        } else {
            per_eps_ext.push_back(vals.back());
            last_err_est = std::abs(vals.back());
        }
        last_errs = errs;
    }

    out.extrapolated = per_eps_ext.back();
    out.err_est = last_err_est;
    out.kappa_converged = last_errs.size() >= 2;
    for (size_t k = 1; k < last_errs.size(); ++k)
        if (last_errs[k] >= last_errs[k - 1]) out.kappa_converged = false;
    if (per_eps_ext.size() >= 2) {
        out.eps_change = std::abs(per_eps_ext.back() -
                                  per_eps_ext[per_eps_ext.size() - 2]);
        out.eps_stable = out.eps_change <= out.err_est;
    }
    return out;
}

} // namespace linkvol
