#include "linkvol/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {

double planar_seg_param(const PlanarLoop& l, int i, double t) {
    const double p0 = l.param[i];
    const double p1 = (i + 1 < l.nseg()) ? l.param[i + 1] : 1.0;
    return p0 + t * (p1 - p0);
}

double lerp(double a, double b, double t) { return a + t * (b - a); }

// Wrapped distance between loop parameters in [0,1).
double wrap_dist(double a, double b) {
    const double f = std::fmod(std::abs(a - b), 1.0);
    return std::min(f, 1.0 - f);
}

// Signed wrapped difference a - b mapped into (-0.5, 0.5].
double wrap_diff(double a, double b) {
    const double d = a - b;
    return d - std::round(d);
}

double segment2_dist(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                     const Vec2& b1) {
    // Sampled clamp-free fallback is unnecessary: in 2-D the minimum between
    // segments is attained at an endpoint against the other segment unless
    // they intersect, which callers handle separately.
    auto point_seg = [](const Vec2& p, const Vec2& s0, const Vec2& s1) {
        const Vec2 d{s1.x - s0.x, s1.y - s0.y};
        const double len2 = d.x * d.x + d.y * d.y;
        double t = len2 > 0 ? ((p.x - s0.x) * d.x + (p.y - s0.y) * d.y) / len2
                            : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double rx = p.x - (s0.x + t * d.x), ry = p.y - (s0.y + t * d.y);
        return std::sqrt(rx * rx + ry * ry);
    };
    return std::min({point_seg(a0, b0, b1), point_seg(a1, b0, b1),
                     point_seg(b0, a0, a1), point_seg(b1, a0, a1)});
}

// Intersects segment i of a with segment j of b; returns true and fills *out
// for a transversal interior crossing. Throws on configurations that a small
// perturbation could resolve either way.
bool segment_crossing(const PlanarLoop& a, int i, const PlanarLoop& b, int j,
                      const CrossOptions& opt, Crossing* out) {
    const int na = a.nseg(), nb = b.nseg();
    const Vec2 p0 = a.p[i], p1 = a.p[(i + 1) % na];
    const Vec2 q0 = b.p[j], q1 = b.p[(j + 1) % nb];
    const Vec2 u{p1.x - p0.x, p1.y - p0.y};
    const Vec2 v{q1.x - q0.x, q1.y - q0.y};
    const Vec2 w{q0.x - p0.x, q0.y - p0.y};
    const double den = cross2(u, v);
    const double scale = norm(u) * norm(v);

    if (std::abs(den) <= opt.parallel_tol * scale) {
        // Parallel segments only matter when they are collinear and overlap;
        // separated parallels (e.g. a loop against its displaced copy) are
        // simply disjoint.
        const double gap = segment2_dist(p0, p1, q0, q1);
        if (gap < opt.parallel_tol * std::max(norm(u), norm(v)))
            throw Error(ErrorCategory::general_position,
                        "collinear overlapping segments " + std::to_string(i) +
                            "/" + std::to_string(j) + " in projection plane " +
                            std::to_string(a.plane));
        return false;
    }

    const double t = cross2(w, v) / den;
    const double r = cross2(w, u) / den;
    const double et = opt.endpoint_tol;
    const bool interior = t > et && t < 1 - et && r > et && r < 1 - et;
    const bool near_hull = t > -et && t < 1 + et && r > -et && r < 1 + et;
    if (!interior) {
        if (near_hull)
            throw Error(ErrorCategory::general_position,
                        "intersection at or near a segment endpoint (segments " +
                            std::to_string(i) + "/" + std::to_string(j) + ")");
        return false;
    }

    const double da = lerp(a.depth[i], a.depth[(i + 1) % na], t);
    const double db = lerp(b.depth[j], b.depth[(j + 1) % nb], r);
    if (std::abs(da - db) < opt.depth_tol)
        throw Error(ErrorCategory::general_position,
                    "depth tie at crossing of segments " + std::to_string(i) +
                        "/" + std::to_string(j) + ": strands touch in space");

    Crossing c;
    c.seg_a = i;
    c.seg_b = j;
    c.t_a = t;
    c.t_b = r;
    c.s_a = planar_seg_param(a, i, t);
    c.s_b = planar_seg_param(b, j, r);
    c.pos = Vec2{p0.x + t * u.x, p0.y + t * u.y};
    c.depth_a = da;
    c.depth_b = db;
    c.time_a = lerp(a.time[i], a.time[(i + 1) % na], t);
    c.time_b = lerp(b.time[j], b.time[(j + 1) % nb], r);
    c.a_over = da > db;
    c.sign = c.a_over ? crossing_sign(u, v) : crossing_sign(v, u);
    *out = c;
    return true;
}

} // namespace

int crossing_sign(const Vec2& t_over, const Vec2& t_under) {
    const double c = cross2(t_over, t_under);
    return c > 0 ? 1 : -1;
}

std::vector<Crossing> find_crossings(const PlanarLoop& a, const PlanarLoop& b,
                                     const CrossOptions& opt) {
    std::vector<Crossing> out;
    for (int i = 0; i < a.nseg(); ++i)
        for (int j = 0; j < b.nseg(); ++j) {
            Crossing c;
            if (segment_crossing(a, i, b, j, opt, &c)) out.push_back(c);
        }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
        return std::tie(x.seg_a, x.t_a, x.seg_b, x.t_b) <
               std::tie(y.seg_a, y.t_a, y.seg_b, y.t_b);
    });
    return out;
}

std::vector<Crossing> find_self_crossings(const PlanarLoop& a,
                                          const CrossOptions& opt) {
    std::vector<Crossing> out;
    const int n = a.nseg();
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            Crossing c;
            if (segment_crossing(a, i, a, j, opt, &c)) out.push_back(c);
        }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
        return std::tie(x.s_a, x.s_b) < std::tie(y.s_a, y.s_b);
    });
    return out;
}

int linking_number(const PlanarLoop& a, const PlanarLoop& b,
                   const CrossOptions& opt) {
    int sum = 0;
    for (const Crossing& c : find_crossings(a, b, opt)) sum += c.sign;
    if (sum % 2 != 0)
        throw Error(ErrorCategory::general_position,
                    "odd signed crossing sum between closed loops");
    return sum / 2;
}

namespace {

struct Chain {
    std::vector<Crossing> entries; // one per retained schedule entry
};

// Greedy minimum-distance matching of equally sized crossing lists from
// consecutive displacement values.
std::vector<int> match_lists(const std::vector<Crossing>& from,
                             const std::vector<Crossing>& to,
                             double match_tol) {
    const int n = static_cast<int>(from.size());
    struct Pair {
        double d;
        int ia, ib;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<size_t>(n) * n);
    for (int ia = 0; ia < n; ++ia)
        for (int ib = 0; ib < n; ++ib) {
            const double d = std::max(wrap_dist(from[ia].s_a, to[ib].s_a),
                                      wrap_dist(from[ia].s_b, to[ib].s_b));
            pairs.push_back({d, ia, ib});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return std::tie(x.d, x.ia, x.ib) < std::tie(y.d, y.ia, y.ib);
    });
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    int assigned = 0;
    for (const Pair& p : pairs) {
        if (map[p.ia] >= 0 || used[p.ib]) continue;
        if (p.d > match_tol)
            throw Error(ErrorCategory::unstable_framing,
                        "crossing moved by " + std::to_string(p.d) +
                            " in loop parameter between displacement steps");
        map[p.ia] = p.ib;
        used[p.ib] = 1;
        if (++assigned == n) break;
    }
    return map;
}

// Linear extrapolation to eps -> 0 from values at the last two displacements.
double extrapolate_eps(double v1, double eps1, double v2, double eps2) {
    return v2 + (v2 - v1) * eps2 / (eps1 - eps2);
}

} // namespace

FramedDiagram framed_diagram(const Loop4& l, const Frame& f, int plane,
                             const std::vector<double>& eps_schedule,
                             const FrameOptions& opt) {
    validate_frame(l, f);
    if (eps_schedule.size() < 3)
        throw Error(ErrorCategory::precondition,
                    "displacement schedule needs at least 3 values");
    for (size_t k = 0; k < eps_schedule.size(); ++k) {
        if (eps_schedule[k] <= 0)
            throw Error(ErrorCategory::precondition,
                        "displacement values must be positive");
        if (k > 0 && eps_schedule[k] >= eps_schedule[k - 1])
            throw Error(ErrorCategory::precondition,
                        "displacement schedule must be strictly decreasing");
    }

    const PlanarLoop base = project_plane(project_time(l), plane);
    const int nlev = static_cast<int>(eps_schedule.size());
    std::vector<std::vector<Crossing>> levels(nlev);
    for (int k = 0; k < nlev; ++k) {
        const Loop4 moved = displace_loop(l, f, eps_schedule[k]);
        levels[k] =
            find_crossings(base, project_plane(project_time(moved), plane),
                           opt.cross);
    }

    if (levels[nlev - 1].size() != levels[nlev - 2].size())
        throw Error(ErrorCategory::unstable_framing,
                    "crossing count changed between the two smallest "
                    "displacements (" +
                        std::to_string(levels[nlev - 2].size()) + " vs " +
                        std::to_string(levels[nlev - 1].size()) + ")");

    // Maximal suffix of the schedule over which the crossing count is stable.
    int tail = nlev - 2;
    while (tail > 0 && levels[tail - 1].size() == levels[nlev - 1].size())
        --tail;
    const int nchain = static_cast<int>(levels[nlev - 1].size());

    std::vector<Chain> chains(nchain);
    for (int c = 0; c < nchain; ++c) chains[c].entries.push_back(levels[tail][c]);
    for (int k = tail; k + 1 < nlev; ++k) {
        const auto map = match_lists(levels[k], levels[k + 1], opt.match_tol);
        // Chains are keyed by their index in the first stable level; follow
        // the composed matching.
        for (int c = 0; c < nchain; ++c) {
            const Crossing& cur = chains[c].entries.back();
            // Locate cur in levels[k] (it is one of its elements).
            int idx = -1;
            for (int q = 0; q < nchain; ++q)
                if (levels[k][q].seg_a == cur.seg_a &&
                    levels[k][q].t_a == cur.t_a &&
                    levels[k][q].seg_b == cur.seg_b &&
                    levels[k][q].t_b == cur.t_b) {
                    idx = q;
                    break;
                }
            chains[c].entries.push_back(levels[k + 1][map[idx]]);
        }
    }

    FramedDiagram out;
    std::vector<std::pair<double, double>> node_limits; // (s_a on l, s on copy)
    std::vector<int> node_signs;
    const double e1 = eps_schedule[nlev - 2], e2 = eps_schedule[nlev - 1];
    for (const Chain& ch : chains) {
        for (const Crossing& c : ch.entries)
            if (c.sign != ch.entries.front().sign)
                throw Error(ErrorCategory::unstable_framing,
                            "crossing sign flipped along a displacement chain");
        const Crossing& c1 = ch.entries[ch.entries.size() - 2];
        const Crossing& c2 = ch.entries.back();
        const double dp1 = wrap_dist(c1.s_a, c1.s_b);
        const double dp2 = wrap_dist(c2.s_a, c2.s_b);
        const bool shrinks =
            dp2 < 1e-9 || (dp1 > 0 && dp2 / dp1 < opt.shrink_ratio);

        const double sa1u = c2.s_a + wrap_diff(c1.s_a, c2.s_a);
        const double sa_lim = extrapolate_eps(sa1u, e1, c2.s_a, e2);
        if (shrinks) {
            HalfTwist ht;
            ht.s = sa_lim - std::floor(sa_lim);
            ht.pos = Vec2{extrapolate_eps(c1.pos.x, e1, c2.pos.x, e2),
                          extrapolate_eps(c1.pos.y, e1, c2.pos.y, e2)};
            ht.sign = c2.sign;
            out.half_twists.push_back(ht);
        } else {
            const double sb1u = c2.s_b + wrap_diff(c1.s_b, c2.s_b);
            const double sb_lim = extrapolate_eps(sb1u, e1, c2.s_b, e2);
            node_limits.emplace_back(sa_lim - std::floor(sa_lim),
                                     sb_lim - std::floor(sb_lim));
            node_signs.push_back(c2.sign);
        }
    }

    // Non-shrinking chains converge to self-crossings of the projected loop,
    // two chains (one per strand pairing with the copy) per self-crossing.
    const auto selfs = find_self_crossings(base, opt.cross);
    if (node_limits.size() != 2 * selfs.size())
        throw Error(ErrorCategory::unstable_framing,
                    "expected " + std::to_string(2 * selfs.size()) +
                        " crossing chains at self-crossings, found " +
                        std::to_string(node_limits.size()));
    std::vector<int> hits(selfs.size(), 0);
    for (size_t q = 0; q < node_limits.size(); ++q) {
        int best = -1;
        double bestd = std::numeric_limits<double>::infinity();
        for (size_t e = 0; e < selfs.size(); ++e) {
            const double direct =
                std::max(wrap_dist(node_limits[q].first, selfs[e].s_a),
                         wrap_dist(node_limits[q].second, selfs[e].s_b));
            const double swapped =
                std::max(wrap_dist(node_limits[q].first, selfs[e].s_b),
                         wrap_dist(node_limits[q].second, selfs[e].s_a));
            const double d = std::min(direct, swapped);
            if (d < bestd) {
                bestd = d;
                best = static_cast<int>(e);
            }
        }
        if (best < 0 || bestd > opt.match_tol)
            throw Error(ErrorCategory::unstable_framing,
                        "crossing chain does not converge to a self-crossing");
        if (node_signs[q] != selfs[best].sign)
            throw Error(ErrorCategory::unstable_framing,
                        "chain sign disagrees with its limit self-crossing");
        ++hits[best];
    }
    for (size_t e = 0; e < selfs.size(); ++e) {
        if (hits[e] != 2)
            throw Error(ErrorCategory::unstable_framing,
                        "self-crossing matched by " + std::to_string(hits[e]) +
                            " chains instead of 2");
        DiagramNode nd;
        nd.s_a = selfs[e].s_a;
        nd.s_b = selfs[e].s_b;
        nd.pos = selfs[e].pos;
        nd.sign = selfs[e].sign;
        out.nodes.push_back(nd);
    }

    std::sort(out.half_twists.begin(), out.half_twists.end(),
              [](const HalfTwist& x, const HalfTwist& y) { return x.s < y.s; });
    return out;
}

int self_linking(const FramedDiagram& d) {
    int ht_sum = 0;
    for (const auto& h : d.half_twists) ht_sum += h.sign;
    if (ht_sum % 2 != 0)
        throw Error(ErrorCategory::unstable_framing,
                    "half-twist signs sum to an odd number (" +
                        std::to_string(ht_sum) + ")");
    int node_sum = 0;
    for (const auto& n : d.nodes) node_sum += n.sign;
    return ht_sum / 2 + node_sum;
}

int tdp(const Loop4& l, const Frame& f, const Region3& region, int plane,
        const std::vector<double>& eps_schedule, double boundary_tol,
        const FrameOptions& opt) {
    validate_region(region);
    const FramedDiagram d = framed_diagram(l, f, plane, eps_schedule, opt);
    // Same kept-axis convention as project_plane.
    const int a = plane % 3, b = (plane + 1) % 3;
    int count = 0;
    for (const HalfTwist& h : d.half_twists) {
        double best_margin = -std::numeric_limits<double>::infinity();
        for (const Box3& box : region.boxes) {
            const double lo_a = box.lo[a], hi_a = box.hi[a];
            const double lo_b = box.lo[b], hi_b = box.hi[b];
            const double margin =
                std::min({h.pos.x - lo_a, hi_a - h.pos.x, h.pos.y - lo_b,
                          hi_b - h.pos.y});
            best_margin = std::max(best_margin, margin);
        }
        if (best_margin >= boundary_tol) {
            ++count;
        } else if (best_margin > -boundary_tol) {
            throw Error(ErrorCategory::degenerate_region,
                        "half-twist at parameter " + std::to_string(h.s) +
                            " lies within " + std::to_string(boundary_tol) +
                            " of the projected region boundary");
        }
    }
    return count;
}

LinkDiagram build_diagram(const Hyperlink& h, int plane,
                          const std::vector<double>& eps_schedule,
                          const FrameOptions& opt) {
    LinkDiagram d;
    d.plane = plane;
    d.n_matter = static_cast<int>(h.matter.size());
    std::vector<PlanarLoop> comps;
    for (const auto& m : h.matter)
        comps.push_back(project_plane(project_time(m.loop), plane));
    for (const auto& g : h.geometric)
        comps.push_back(project_plane(project_time(g), plane));

    for (size_t i = 0; i < comps.size(); ++i) {
        for (size_t j = i + 1; j < comps.size(); ++j) {
            auto cs = find_crossings(comps[i], comps[j], opt.cross);
            for (Crossing& c : cs) {
                c.comp_a = static_cast<int>(i);
                c.comp_b = static_cast<int>(j);
                d.crossings.push_back(c);
            }
        }
        auto ss = find_self_crossings(comps[i], opt.cross);
        for (Crossing& c : ss) {
            c.comp_a = c.comp_b = static_cast<int>(i);
            d.self_crossings.push_back(c);
        }
    }
    for (const auto& m : h.matter) {
        FramedDiagram fd = framed_diagram(m.loop, m.frame, plane, eps_schedule, opt);
        const int comp = static_cast<int>(d.framing.size());
        for (auto& ht : fd.half_twists) ht.component = comp;
        for (auto& nd : fd.nodes) nd.component = comp;
        d.framing.push_back(std::move(fd));
    }
    return d;
}

} // namespace linkvol
