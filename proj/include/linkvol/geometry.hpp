#pragma once
#include <string>
#include <vector>

#include "linkvol/vec.hpp"

namespace linkvol {

// Closed oriented polyline in time x space. Vertices are listed once; the
// closing segment runs from the last vertex back to the first. The global
// parameter s in [0,1) is proportional to spatial arc length.
struct Loop4 {
    std::vector<Point4> v;
    std::vector<double> param; // param[i] = arc-length parameter of vertex i

    int nseg() const { return static_cast<int>(v.size()); }
    const Point4& vert(int i) const { return v[(i % nseg() + nseg()) % nseg()]; }
    // Piecewise-linear point at global parameter s (wrapped into [0,1)).
    Point4 at(double s) const;
    // Global parameter of the point at local coordinate t on segment i.
    double seg_param(int i, double t) const;
};

// Validates vertex count and consecutive spatial distinctness, computes the
// arc-length parametrization. Structural error on failure.
Loop4 make_loop(std::vector<Point4> vertices);

// One unit normal per loop vertex, linearly interpolated and renormalized
// along segments.
struct Frame {
    std::vector<Vec3> normals;
};

// Structural checks: size matches the loop, unit length, never parallel to
// the adjacent segment directions.
void validate_frame(const Loop4& l, const Frame& f);

struct MatterLoop {
    Loop4 loop;
    Frame frame;
    double j_plus = 0, j_minus = 0;
};

struct Hyperlink {
    std::vector<MatterLoop> matter;
    std::vector<Loop4> geometric;
};

// Spatial projection of a loop; vertex time labels ride along so downstream
// consumers can form time-order factors at crossings.
struct SpatialLoop {
    std::vector<Vec3> p;
    std::vector<double> time;
    std::vector<double> param;
    int nseg() const { return static_cast<int>(p.size()); }
};

// Planar projection onto the plane with normal axis k in {1,2,3}; the dropped
// coordinate is kept per vertex as depth for over/under decisions.
struct PlanarLoop {
    std::vector<Vec2> p;
    std::vector<double> depth;
    std::vector<double> time;
    std::vector<double> param;
    int plane = 3;
    int nseg() const { return static_cast<int>(p.size()); }
};

SpatialLoop project_time(const Loop4& l);
PlanarLoop project_plane(const SpatialLoop& c, int k);

// Vertex-wise l + eps * frame (purely spatial; time labels unchanged).
// Regularization error if the displaced spatial polyline is not simple.
Loop4 displace_loop(const Loop4& l, const Frame& f, double eps);

struct Box3 {
    Vec3 lo, hi;
    double volume() const {
        return (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
    }
};

struct Region3 {
    std::vector<Box3> boxes;
    double volume() const {
        double v = 0;
        for (const auto& b : boxes) v += b.volume();
        return v;
    }
};

// Validates box extents and pairwise-disjoint interiors.
void validate_region(const Region3& r);

struct Violation {
    std::string kind; // "min-distance" or "shared-coordinates"
    std::string loop_a, loop_b;
    int seg_a = 0, seg_b = 0;
    double value = 0; // offending distance (a) or time separation (b)
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

// Checks that the loops of h can never produce ill-defined projections:
// (a) exact minimum spatial distance between non-adjacent segments of one
//     loop, and between all segment pairs of distinct loops, must be at least
//     min_spatial_sep;
// (b) sampled cross-loop point pairs (8x8 per segment pair) that agree in at
//     least two spatial coordinates must not also agree in time. Within one
//     loop, (a) already enforces spatial simplicity exactly, and same-loop
//     projection crossings resolve over/under by depth, never by time, so (b)
//     applies across loops only. The agreement tolerance is 0.25x the mean
//     segment length (a sampling-resolution heuristic; (a) is the exact
//     guarantee).
ValidationReport validate_timelike(const Hyperlink& h, double min_spatial_sep);

// Region partition cells. tag >= 0: cell lies inside the tube of matter
// component tag; kExterior: cell meets no tube; kBoundary: cell still
// straddles a tube boundary at the depth limit (kept only where the distance
// to every straddled loop exceeds half the tube radius, i.e. in the outer
// shell where integrands are negligible). straddled lists the components a
// boundary cell may touch.
struct Cell {
    Box3 box;
    int tag = 0;
    std::vector<int> straddled;

    static constexpr int kExterior = -1;
    static constexpr int kBoundary = -2;
};

struct RegionPartition {
    std::vector<Cell> cells;
    double volume() const {
        double v = 0;
        for (const auto& c : cells) v += c.box.volume();
        return v;
    }
};

// Octree-style subdivision of r until every cell is inside exactly one matter
// tube or outside all of them; initial cells are no larger than max_cell per
// axis. Ambiguous-partition error when two tubes overlap; refinement error
// when subdivision hits the depth limit deep inside a tube.
RegionPartition partition_region(const Region3& r, const Hyperlink& h,
                                 double tube_radius, double max_cell,
                                 int max_depth = 8);

// Exact minimum spatial distance between two loops (all segment pairs).
double loop_min_dist(const Loop4& a, const Loop4& b);

// Exact distance between a spatial segment and an axis-aligned box (zero when
// they intersect); the point-to-box distance is convex along the segment.
double segment_box_distance(const Vec3& a, const Vec3& b, const Box3& box);

} // namespace linkvol
