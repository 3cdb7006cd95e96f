#include "linkvol/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {

double wrap01(double s) {
    double w = s - std::floor(s);
    if (w >= 1.0) w = 0.0;
    return w;
}

} // namespace

Point4 Loop4::at(double s) const {
    const double w = wrap01(s);
    // param is ascending with param[0] == 0; find the segment containing w.
    auto it = std::upper_bound(param.begin(), param.end(), w);
    int i = static_cast<int>(it - param.begin()) - 1;
    if (i < 0) i = 0;
    if (i >= nseg()) i = nseg() - 1;
    const double p0 = param[i];
    const double p1 = (i + 1 < nseg()) ? param[i + 1] : 1.0;
    const double t = (p1 > p0) ? (w - p0) / (p1 - p0) : 0.0;
    const Point4& a = v[i];
    const Point4& b = vert(i + 1);
    return Point4{a.t + t * (b.t - a.t), a.x + t * (b.x - a.x),
                  a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

double Loop4::seg_param(int i, double t) const {
    const double p0 = param[i];
    const double p1 = (i + 1 < nseg()) ? param[i + 1] : 1.0;
    return p0 + t * (p1 - p0);
}

Loop4 make_loop(std::vector<Point4> vertices) {
    if (vertices.size() < 3)
        throw Error(ErrorCategory::structural,
                    "loop needs at least 3 vertices, got " +
                        std::to_string(vertices.size()));
    const int n = static_cast<int>(vertices.size());
    std::vector<double> len(n);
    double total = 0;
    for (int i = 0; i < n; ++i) {
        const Vec3 d = vertices[(i + 1) % n].spatial() - vertices[i].spatial();
        len[i] = norm(d);
        total += len[i];
    }
    for (int i = 0; i < n; ++i) {
        if (len[i] <= 1e-14 * total)
            throw Error(ErrorCategory::structural,
                        "consecutive loop vertices " + std::to_string(i) +
                            " and " + std::to_string((i + 1) % n) +
                            " coincide spatially");
    }
    Loop4 l;
    l.v = std::move(vertices);
    l.param.resize(n);
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        l.param[i] = acc / total;
        acc += len[i];
    }
    l.param[0] = 0.0;
    return l;
}

void validate_frame(const Loop4& l, const Frame& f) {
    if (f.normals.size() != l.v.size())
        throw Error(ErrorCategory::structural,
                    "frame has " + std::to_string(f.normals.size()) +
                        " normals for a loop with " +
                        std::to_string(l.v.size()) + " vertices");
    const int n = l.nseg();
    for (int i = 0; i < n; ++i) {
        const double nn = norm(f.normals[i]);
        if (std::abs(nn - 1.0) > 1e-6)
            throw Error(ErrorCategory::structural,
                        "frame normal " + std::to_string(i) +
                            " is not unit length (|n| = " +
                            std::to_string(nn) + ")");
        // The normal must not be parallel to either adjacent segment, or the
        // displaced polyline degenerates against the original.
        for (int k : {i, (i - 1 + n) % n}) {
            Vec3 d = l.vert(k + 1).spatial() - l.vert(k).spatial();
            d = normalized(d);
            if (norm(cross(d, f.normals[i])) < 1e-9)
                throw Error(ErrorCategory::structural,
                            "frame normal " + std::to_string(i) +
                                " is parallel to segment " + std::to_string(k));
        }
    }
}

SpatialLoop project_time(const Loop4& l) {
    SpatialLoop c;
    c.p.reserve(l.v.size());
    c.time.reserve(l.v.size());
    for (const auto& q : l.v) {
        c.p.push_back(q.spatial());
        c.time.push_back(q.t);
    }
    c.param = l.param;
    return c;
}

PlanarLoop project_plane(const SpatialLoop& c, int k) {
    if (k < 1 || k > 3)
        throw Error(ErrorCategory::domain,
                    "projection plane index must be 1, 2 or 3, got " +
                        std::to_string(k));
    // Plane k keeps the two axes cyclically following k, so orientation
    // conventions match across all three choices: k=3 -> (x1,x2) with depth
    // x3, k=1 -> (x2,x3) with depth x1, k=2 -> (x3,x1) with depth x2.
    const int a = k % 3;       // first kept axis, 0-indexed
    const int b = (k + 1) % 3; // second kept axis
    const int d = k - 1;       // dropped axis
    PlanarLoop out;
    out.plane = k;
    out.p.reserve(c.p.size());
    out.depth.reserve(c.p.size());
    for (const auto& q : c.p) {
        out.p.push_back(Vec2{q[a], q[b]});
        out.depth.push_back(q[d]);
    }
    out.time = c.time;
    out.param = c.param;
    return out;
}

Loop4 displace_loop(const Loop4& l, const Frame& f, double eps) {
    validate_frame(l, f);
    if (eps < 0)
        throw Error(ErrorCategory::domain, "displacement must be >= 0");
    std::vector<Point4> verts = l.v;
    const int n = l.nseg();
    for (int i = 0; i < n; ++i) {
        verts[i].x += eps * f.normals[i].x;
        verts[i].y += eps * f.normals[i].y;
        verts[i].z += eps * f.normals[i].z;
    }
    Loop4 out = make_loop(std::move(verts));
    // The displaced spatial polyline must remain simple.
    double scale = 0;
    for (int i = 0; i < n; ++i)
        scale = std::max(scale,
                         norm(out.vert(i + 1).spatial() - out.v[i].spatial()));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent through the seam
            const double d = segment_segment_dist(
                out.v[i].spatial(), out.vert(i + 1).spatial(),
                out.v[j].spatial(), out.vert(j + 1).spatial());
            if (d < 1e-12 * scale)
                throw Error(ErrorCategory::regularization,
                            "displaced loop self-intersects between segments " +
                                std::to_string(i) + " and " +
                                std::to_string(j));
        }
    }
    return out;
}

void validate_region(const Region3& r) {
    if (r.boxes.empty())
        throw Error(ErrorCategory::structural, "region has no boxes");
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        const Box3& b = r.boxes[i];
        if (!(b.lo.x < b.hi.x && b.lo.y < b.hi.y && b.lo.z < b.hi.z))
            throw Error(ErrorCategory::structural,
                        "region box " + std::to_string(i) +
                            " has non-positive extent");
    }
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        for (size_t j = i + 1; j < r.boxes.size(); ++j) {
            const Box3 &a = r.boxes[i], &b = r.boxes[j];
            const bool overlap = a.lo.x < b.hi.x && b.lo.x < a.hi.x &&
                                 a.lo.y < b.hi.y && b.lo.y < a.hi.y &&
                                 a.lo.z < b.hi.z && b.lo.z < a.hi.z;
            if (overlap)
                throw Error(ErrorCategory::structural,
                            "region boxes " + std::to_string(i) + " and " +
                                std::to_string(j) + " overlap");
        }
    }
}

namespace {

struct NamedLoop {
    const Loop4* loop;
    std::string name;
};

std::vector<NamedLoop> collect_loops(const Hyperlink& h) {
    std::vector<NamedLoop> out;
    for (size_t i = 0; i < h.matter.size(); ++i)
        out.push_back({&h.matter[i].loop, "matter[" + std::to_string(i) + "]"});
    for (size_t i = 0; i < h.geometric.size(); ++i)
        out.push_back({&h.geometric[i], "geometric[" + std::to_string(i) + "]"});
    return out;
}

} // namespace

ValidationReport validate_timelike(const Hyperlink& h, double min_spatial_sep) {
    if (h.matter.empty())
        throw Error(ErrorCategory::structural,
                    "hyperlink has no matter components");
    const auto loops = collect_loops(h);
    ValidationReport rep;

    double mean_seg = 0;
    int seg_count = 0;
    for (const auto& nl : loops) {
        const int n = nl.loop->nseg();
        for (int i = 0; i < n; ++i) {
            mean_seg +=
                norm(nl.loop->vert(i + 1).spatial() - nl.loop->v[i].spatial());
            ++seg_count;
        }
    }
    mean_seg /= seg_count;
    const double tol = 0.25 * mean_seg;

    // (a) exact spatial separation: non-adjacent segments within a loop,
    // all segment pairs across loops.
    for (size_t la = 0; la < loops.size(); ++la) {
        const Loop4& A = *loops[la].loop;
        const int na = A.nseg();
        for (int i = 0; i < na; ++i) {
            for (int j = i + 2; j < na; ++j) {
                if (i == 0 && j == na - 1) continue;
                const double d = segment_segment_dist(
                    A.v[i].spatial(), A.vert(i + 1).spatial(),
                    A.v[j].spatial(), A.vert(j + 1).spatial());
                if (d < min_spatial_sep)
                    rep.violations.push_back({"min-distance", loops[la].name,
                                              loops[la].name, i, j, d});
            }
        }
        for (size_t lb = la + 1; lb < loops.size(); ++lb) {
            const Loop4& B = *loops[lb].loop;
            for (int i = 0; i < na; ++i) {
                for (int j = 0; j < B.nseg(); ++j) {
                    const double d = segment_segment_dist(
                        A.v[i].spatial(), A.vert(i + 1).spatial(),
                        B.v[j].spatial(), B.vert(j + 1).spatial());
                    if (d < min_spatial_sep)
                        rep.violations.push_back({"min-distance",
                                                  loops[la].name,
                                                  loops[lb].name, i, j, d});
                }
            }
        }
    }

    // (b) sampled cross-loop pairs: two shared spatial coordinates force a
    // time separation, otherwise some planar projection puts the points on
    // top of each other at equal times and time-order factors at the
    // corresponding crossing are ill-defined.
    constexpr int kSamples = 8;
    for (size_t la = 0; la < loops.size(); ++la) {
        for (size_t lb = la + 1; lb < loops.size(); ++lb) {
            const Loop4& A = *loops[la].loop;
            const Loop4& B = *loops[lb].loop;
            for (int i = 0; i < A.nseg(); ++i) {
                bool flagged = false;
                for (int j = 0; j < B.nseg() && !flagged; ++j) {
                    for (int si = 0; si < kSamples && !flagged; ++si) {
                        const double ti = (si + 0.5) / kSamples;
                        const Point4 pa = A.at(A.seg_param(i, ti));
                        for (int sj = 0; sj < kSamples; ++sj) {
                            const double tj = (sj + 0.5) / kSamples;
                            const Point4 pb = B.at(B.seg_param(j, tj));
                            int shared = 0;
                            if (std::abs(pa.x - pb.x) < tol) ++shared;
                            if (std::abs(pa.y - pb.y) < tol) ++shared;
                            if (std::abs(pa.z - pb.z) < tol) ++shared;
                            if (shared >= 2 && std::abs(pa.t - pb.t) < tol) {
                                rep.violations.push_back(
                                    {"shared-coordinates", loops[la].name,
                                     loops[lb].name, i, j,
                                     std::abs(pa.t - pb.t)});
                                flagged = true;
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    return rep;
}

double loop_min_dist(const Loop4& a, const Loop4& b) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.nseg(); ++i)
        for (int j = 0; j < b.nseg(); ++j)
            best = std::min(best, segment_segment_dist(
                                      a.v[i].spatial(), a.vert(i + 1).spatial(),
                                      b.v[j].spatial(), b.vert(j + 1).spatial()));
    return best;
}

namespace {

double point_box_dist(const Vec3& p, const Box3& b) {
    const double dx = std::max({b.lo.x - p.x, 0.0, p.x - b.hi.x});
    const double dy = std::max({b.lo.y - p.y, 0.0, p.y - b.hi.y});
    const double dz = std::max({b.lo.z - p.z, 0.0, p.z - b.hi.z});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace

// min_{t in [0,1]} dist(a + t(b-a), box); the objective is convex in t, so a
// ternary search converges to full precision.
double segment_box_distance(const Vec3& a, const Vec3& b, const Box3& box) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        const double f1 = point_box_dist(a + m1 * (b - a), box);
        const double f2 = point_box_dist(a + m2 * (b - a), box);
        if (f1 <= f2)
            hi = m2;
        else
            lo = m1;
    }
    const double m = 0.5 * (lo + hi);
    return std::min({point_box_dist(a, box), point_box_dist(b, box),
                     point_box_dist(a + m * (b - a), box)});
}

namespace {

struct TubeContext {
    std::vector<const Loop4*> loops;
    double radius;
};

// Exact min and a corner-based upper bound for the max of the distance from
// points of `box` to the spatial polyline of loop u. The max of a convex
// per-segment distance over a box is attained at a corner, and
//   max_box min_seg d  <=  min_seg max_box d,
// so the bound errs toward further subdivision, never misclassification.
void box_loop_bounds(const Box3& box, const Loop4& loop, double* min_d,
                     double* max_ub) {
    double mind = std::numeric_limits<double>::infinity();
    for (int i = 0; i < loop.nseg(); ++i)
        mind = std::min(mind,
                        segment_box_distance(loop.v[i].spatial(),
                                         loop.vert(i + 1).spatial(), box));

    Vec3 corners[8];
    int c = 0;
    for (double x : {box.lo.x, box.hi.x})
        for (double y : {box.lo.y, box.hi.y})
            for (double z : {box.lo.z, box.hi.z}) corners[c++] = Vec3{x, y, z};
    double maxub = std::numeric_limits<double>::infinity();
    for (int i = 0; i < loop.nseg(); ++i) {
        double worst = 0;
        for (const Vec3& q : corners)
            worst = std::max(worst,
                             point_segment_dist(q, loop.v[i].spatial(),
                                                loop.vert(i + 1).spatial()));
        maxub = std::min(maxub, worst);
    }
    *min_d = mind;
    *max_ub = maxub;
}

void subdivide(const Box3& box, const TubeContext& ctx, int depth,
               int max_depth, std::vector<Cell>& out) {
    const int n = static_cast<int>(ctx.loops.size());
    std::vector<int> straddled;
    int inside_tag = -1;
    bool outside_all = true;
    for (int u = 0; u < n; ++u) {
        double mind, maxub;
        box_loop_bounds(box, *ctx.loops[u], &mind, &maxub);
        if (maxub <= ctx.radius) {
            inside_tag = u;
            outside_all = false;
            break;
        }
        if (mind < ctx.radius) {
            outside_all = false;
            straddled.push_back(u);
        }
    }
    if (inside_tag >= 0) {
        out.push_back(Cell{box, inside_tag, {}});
        return;
    }
    if (outside_all) {
        out.push_back(Cell{box, Cell::kExterior, {}});
        return;
    }
    if (depth >= max_depth) {
        // Keep the cell as a boundary cell only in the outer shell of the
        // tube, where its contribution to any tube-supported sum is
        // negligible; deeper straddling means the subdivision failed.
        double nearest = std::numeric_limits<double>::infinity();
        for (int u : straddled) {
            double mind, maxub;
            box_loop_bounds(box, *ctx.loops[u], &mind, &maxub);
            nearest = std::min(nearest, mind);
        }
        if (nearest > 0.5 * ctx.radius) {
            out.push_back(Cell{box, Cell::kBoundary, straddled});
            return;
        }
        throw Error(ErrorCategory::refinement,
                    "cell still straddles a tube boundary at depth " +
                        std::to_string(depth));
    }
    const Vec3 mid{0.5 * (box.lo.x + box.hi.x), 0.5 * (box.lo.y + box.hi.y),
                   0.5 * (box.lo.z + box.hi.z)};
    for (int oz = 0; oz < 2; ++oz)
        for (int oy = 0; oy < 2; ++oy)
            for (int ox = 0; ox < 2; ++ox) {
                Box3 child;
                child.lo = Vec3{ox ? mid.x : box.lo.x, oy ? mid.y : box.lo.y,
                                oz ? mid.z : box.lo.z};
                child.hi = Vec3{ox ? box.hi.x : mid.x, oy ? box.hi.y : mid.y,
                                oz ? box.hi.z : mid.z};
                subdivide(child, ctx, depth + 1, max_depth, out);
            }
}

} // namespace

RegionPartition partition_region(const Region3& r, const Hyperlink& h,
                                 double tube_radius, double max_cell,
                                 int max_depth) {
    validate_region(r);
    if (tube_radius <= 0 || max_cell <= 0)
        throw Error(ErrorCategory::domain,
                    "tube radius and max cell size must be positive");
    TubeContext ctx;
    for (const auto& m : h.matter) ctx.loops.push_back(&m.loop);
    ctx.radius = tube_radius;
    for (size_t a = 0; a < ctx.loops.size(); ++a)
        for (size_t b = a + 1; b < ctx.loops.size(); ++b) {
            const double d = loop_min_dist(*ctx.loops[a], *ctx.loops[b]);
            if (d <= 2 * tube_radius)
                throw Error(ErrorCategory::ambiguous_partition,
                            "tubes of matter components " + std::to_string(a) +
                                " and " + std::to_string(b) +
                                " overlap (loop distance " +
                                std::to_string(d) + ")");
        }

    RegionPartition part;
    for (const Box3& b : r.boxes) {
        const int nx = std::max(1, (int)std::ceil((b.hi.x - b.lo.x) / max_cell));
        const int ny = std::max(1, (int)std::ceil((b.hi.y - b.lo.y) / max_cell));
        const int nz = std::max(1, (int)std::ceil((b.hi.z - b.lo.z) / max_cell));
        for (int iz = 0; iz < nz; ++iz)
            for (int iy = 0; iy < ny; ++iy)
                for (int ix = 0; ix < nx; ++ix) {
                    Box3 cell;
                    cell.lo = Vec3{b.lo.x + (b.hi.x - b.lo.x) * ix / nx,
                                   b.lo.y + (b.hi.y - b.lo.y) * iy / ny,
                                   b.lo.z + (b.hi.z - b.lo.z) * iz / nz};
                    cell.hi = Vec3{b.lo.x + (b.hi.x - b.lo.x) * (ix + 1) / nx,
                                   b.lo.y + (b.hi.y - b.lo.y) * (iy + 1) / ny,
                                   b.lo.z + (b.hi.z - b.lo.z) * (iz + 1) / nz};
                    subdivide(cell, ctx, 0, max_depth, part.cells);
                }
    }
    return part;
}

} // namespace linkvol
