#pragma once
#include <vector>

#include "linkvol/geometry.hpp"
#include "linkvol/vec.hpp"

namespace linkvol {

// Transversal crossing of two planar polyline strands. comp/seg identify the
// strands, t_* are local segment coordinates in (0,1), s_* global loop
// parameters. Over/under is decided by the stored projection depths, and
// sign = crossing_sign(tangent of the over strand, tangent of the under
// strand).
struct Crossing {
    int comp_a = 0, comp_b = 0;
    int seg_a = 0, seg_b = 0;
    double t_a = 0, t_b = 0;
    double s_a = 0, s_b = 0;
    Vec2 pos{};
    double depth_a = 0, depth_b = 0;
    double time_a = 0, time_b = 0;
    bool a_over = false;
    int sign = 0;
};

struct CrossOptions {
    // |cross2(u,v)| <= parallel_tol * |u||v| counts as parallel.
    double parallel_tol = 1e-12;
    // Intersections within this distance (in local coordinates) of a segment
    // endpoint are rejected as not in general position.
    double endpoint_tol = 1e-9;
    // Depth ties below this absolute tolerance cannot resolve over/under.
    double depth_tol = 1e-9;
};

// Sign convention: +1 when rotating the over-strand tangent onto the
// under-strand tangent counterclockwise, i.e. sign of cross2(t_over, t_under).
int crossing_sign(const Vec2& t_over, const Vec2& t_under);

// All transversal crossings between two planar loops, sorted by
// (seg_a, t_a, seg_b, t_b). General-position errors: near-parallel
// overlapping segments, near-endpoint intersections, depth ties.
std::vector<Crossing> find_crossings(const PlanarLoop& a, const PlanarLoop& b,
                                     const CrossOptions& opt = {});

// Self-crossings of one planar loop; each unordered crossing is reported
// once, with s_a < s_b.
std::vector<Crossing> find_self_crossings(const PlanarLoop& a,
                                          const CrossOptions& opt = {});

// Half of the signed crossing sum between two planar loops. Plane-invariant
// for spatially disjoint loops.
int linking_number(const PlanarLoop& a, const PlanarLoop& b,
                   const CrossOptions& opt = {});

// Point where the displaced loop crosses the original loop at coinciding
// parameters in the vanishing-displacement limit: the framing performs half
// a turn around the tangent there.
struct HalfTwist {
    int component = 0;
    double s = 0;
    Vec2 pos{};
    int sign = 0;
};

// Transversal double point of one projected loop (a self-crossing); the
// displaced copy contributes a pair of crossings converging to it, counted
// once here.
struct DiagramNode {
    int component = 0;
    double s_a = 0, s_b = 0;
    Vec2 pos{};
    int sign = 0;
};

struct FramedDiagram {
    std::vector<HalfTwist> half_twists;
    std::vector<DiagramNode> nodes;
};

struct FrameOptions {
    CrossOptions cross;
    // Maximum parameter jump when matching crossing chains between
    // consecutive displacement values (loops are unit-parameter scale).
    double match_tol = 0.2;
    // A chain whose parameter gap |s_a - s_b| shrinks by at least this
    // factor per halving step is a half-twist; a non-shrinking gap marks a
    // self-crossing node.
    double shrink_ratio = 0.75;
};

// Tracks the crossings between the loop and its frame-displaced copy across
// a strictly decreasing displacement schedule (at least three values),
// matches them into chains, and classifies each chain by whether its
// parameter gap vanishes with the displacement. Unstable-framing errors:
// crossing counts not stable across the last two displacements, chains that
// jump, change sign, or fail to pair into self-crossing nodes.
FramedDiagram framed_diagram(const Loop4& l, const Frame& f, int plane,
                             const std::vector<double>& eps_schedule,
                             const FrameOptions& opt = {});

// Half the signed half-twist count plus the signed node count. The half-twist
// sign sum must be even; a framing that closes on an odd number of half
// turns is unstable.
int self_linking(const FramedDiagram& d);

// Number of half-twist points whose planar position lies inside the
// projection of the region. Degenerate-region error when a point falls
// within boundary_tol of a projected box edge.
int tdp(const Loop4& l, const Frame& f, const Region3& region, int plane,
        const std::vector<double>& eps_schedule, double boundary_tol,
        const FrameOptions& opt = {});

// Full diagram of a hyperlink in one projection plane: crossings between all
// component pairs (matter components first, then geometric), self-crossings
// of each component, and the framed diagram of each matter component.
struct LinkDiagram {
    int plane = 3;
    int n_matter = 0;
    std::vector<Crossing> crossings;      // between distinct components
    std::vector<Crossing> self_crossings; // within components, deduplicated
    std::vector<FramedDiagram> framing;   // one per matter component
};

LinkDiagram build_diagram(const Hyperlink& h, int plane,
                          const std::vector<double>& eps_schedule,
                          const FrameOptions& opt = {});

} // namespace linkvol
