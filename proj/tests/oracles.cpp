#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

using linkvol::Box3;
using linkvol::PlanarLoop;
using linkvol::Point4;
using linkvol::Vec2;
using linkvol::Vec3;

namespace {

double simpson_rule(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_rule(a, m, fa, flm, fm);
    const double right = simpson_rule(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

int sgn(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, double tol,
               int max_depth) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson_rec(f, a, b, fa, fm, fb, simpson_rule(a, b, fa, fm, fb), tol, max_depth);
}

Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a) {
    const double nrm = a.norm();
    int squarings = 0;
    double scale = 1.0;
    while (nrm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXcd b = scale * a;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

std::vector<ChordCrossing> chord_crossings(const PlanarLoop& a, const PlanarLoop& b,
                                           int subdiv) {
    struct Chord {
        Vec2 p0, p1;
        double d0, d1;  // depths
        double s0, s1;  // loop parameters
    };
    auto chords_of = [subdiv](const PlanarLoop& l) {
        std::vector<Chord> out;
        const int n = l.nseg();
        for (int i = 0; i < n; ++i) {
            const Vec2 p0 = l.p[i], p1 = l.p[(i + 1) % n];
            const double d0 = l.depth[i], d1 = l.depth[(i + 1) % n];
            const double s0 = l.param[i];
            const double s1 = (i + 1 < n) ? l.param[i + 1] : 1.0;
            for (int k = 0; k < subdiv; ++k) {
                const double f0 = static_cast<double>(k) / subdiv;
                const double f1 = static_cast<double>(k + 1) / subdiv;
                out.push_back(Chord{p0 + f0 * (p1 - p0), p0 + f1 * (p1 - p0),
                                    d0 + f0 * (d1 - d0), d0 + f1 * (d1 - d0),
                                    s0 + f0 * (s1 - s0), s0 + f1 * (s1 - s0)});
            }
        }
        return out;
    };

    std::vector<ChordCrossing> out;
    for (const Chord& ca : chords_of(a)) {
        const Vec2 u = ca.p1 - ca.p0;
        for (const Chord& cb : chords_of(b)) {
            const Vec2 v = cb.p1 - cb.p0;
            // Proper intersection: each chord's endpoints strictly straddle
            // the other's supporting line.
            const int o1 = sgn(cross2(u, cb.p0 - ca.p0));
            const int o2 = sgn(cross2(u, cb.p1 - ca.p0));
            const int o3 = sgn(cross2(v, ca.p0 - cb.p0));
            const int o4 = sgn(cross2(v, ca.p1 - cb.p0));
            if (o1 * o2 >= 0 || o3 * o4 >= 0) continue;
            const double den = cross2(u, v);
            const double ta = cross2(cb.p0 - ca.p0, v) / den;
            const double tb = cross2(cb.p0 - ca.p0, u) / den;
            ChordCrossing c;
            c.s_a = ca.s0 + ta * (ca.s1 - ca.s0);
            c.s_b = cb.s0 + tb * (cb.s1 - cb.s0);
            const double da = ca.d0 + ta * (ca.d1 - ca.d0);
            const double db = cb.d0 + tb * (cb.d1 - cb.d0);
            c.a_over = da > db;
            c.sign = c.a_over ? sgn(cross2(u, v)) : sgn(cross2(v, u));
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), [](const ChordCrossing& x, const ChordCrossing& y) {
        return x.s_a != y.s_a ? x.s_a < y.s_a : x.s_b < y.s_b;
    });
    return out;
}

double dense_segment_box_dist(Vec3 a, Vec3 b, const Box3& box, int samples) {
    double best = 1e300;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const Vec3 p = a + t * (b - a);
        double d2 = 0;
        for (int ax = 0; ax < 3; ++ax) {
            const double lo = box.lo[ax], hi = box.hi[ax];
            const double c = p[ax] < lo ? lo - p[ax] : (p[ax] > hi ? p[ax] - hi : 0.0);
            d2 += c * c;
        }
        best = std::min(best, std::sqrt(d2));
    }
    return best;
}

double dense_segment_segment_dist(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2, int samples) {
    double best = 1e300;
    for (int i = 0; i < samples; ++i) {
        const double s = static_cast<double>(i) / (samples - 1);
        const Vec3 p = p1 + s * (p2 - p1);
        best = std::min(best, linkvol::point_segment_dist(p, q1, q2));
    }
    for (int i = 0; i < samples; ++i) {
        const double s = static_cast<double>(i) / (samples - 1);
        const Vec3 q = q1 + s * (q2 - q1);
        best = std::min(best, linkvol::point_segment_dist(q, p1, p2));
    }
    return best;
}

std::vector<Point4> random_loop(std::mt19937_64& rng, int nverts, double t0, Vec3 center) {
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Point4> v;
    v.reserve(nverts);
    for (int i = 0; i < nverts; ++i) {
        const double th = 2.0 * M_PI * (i + 0.4 * (u01() - 0.5)) / nverts;
        const double r = 1.0 + 0.25 * (2.0 * u01() - 1.0);
        const double z = 0.3 * (2.0 * u01() - 1.0);
        v.push_back(Point4{t0, center.x + r * std::cos(th), center.y + r * std::sin(th),
                           center.z + z});
    }
    return v;
}

}  // namespace oracle
