#pragma once

#include <vector>

#include "linkvol/geometry.hpp"
#include "linkvol/scene.hpp"

// Deterministic sample loops and complete sample scenes.  These are the
// fixtures used by the test suite, the benchmark, and the bundled scene
// corpus generator; every numeric constant below is frozen so downstream
// expectations stay valid.
namespace linkvol::samples {

// Matter circle: unit circle in the x-y plane, tilted by
// rot_z(0.12)*rot_x(0.15) so every coordinate plane sees a non-degenerate
// projection, at constant time t0.
std::vector<Point4> matter_circle(int n = 32, double t0 = 0.25);

// Unit normal field on matter_circle: the frame angle about the tangent is
// ang(th) = turns*th + phi0 - steep*sin(2*(turns*th + phi0)), measured from
// the radial direction toward the tilted plane normal.  turns=1 gives one
// net rotation (two half-twists); steep in (0, 0.5) sweeps fastest exactly
// at the half-twist locations, which sharpens the eps -> 0 limit.
std::vector<Vec3> matter_frame(int n = 32, double phi0 = 0.37, int turns = 1,
                               double steep = 0.0);

// Geometric circle: unit circle in the x-z plane, tilted by
// rot_z(0.11)*rot_x(0.13), centered at (1,0,0), at constant time t0.
// Threads the matter circle once (Hopf configuration).
std::vector<Point4> geo_circle(int n = 32, double t0 = -0.35);

// (2,1)-cable of radius a around the geometric circle's core: winds through
// the matter circle twice.
std::vector<Point4> double_wind(int n = 64, double t0 = -0.35, double a = 0.18);

// Figure-eight shaped single loop (one projected self-crossing in the x-y
// plane) with a frame whose displaced copy shrinks onto that crossing as
// eps -> 0, giving self-linking +1.
std::vector<Point4> figure_eight(int n = 40, double t0 = 0.25);
std::vector<Vec3> figure_eight_frame(int n = 40);

// Long flat "paperclip" stadium with inward-pointing normals: the displaced
// copy crosses the original for large eps but the crossings vanish as the
// displacement shrinks below the stadium half-gap, so crossing counts over a
// coarse eps schedule never stabilize.  Exercises the unstable-framing
// failure mode.
std::vector<Point4> paperclip(double t0 = 0.25);
std::vector<Vec3> paperclip_frame();

// --- complete scenes -------------------------------------------------------

// Matter circle + geometric circle moved far away: zero crossings in every
// plane, sk = 0.
SceneFile scene_split_pair();

// Matter circle + geometric circle threading it: sk = +1.
SceneFile scene_hopf_pair();

// Matter circle + double-wound cable: sk = +2.
SceneFile scene_double_wind();

// Hopf pair with a steep frame and a region containing both half-twists of
// the matter loop: the full volume-operator fixture.
SceneFile scene_golden_volume();

// Golden scene plus a second framed matter loop far away (outside the
// region, not linked by the geometric loop): exercises the two-component
// product with per-loop twist counts {2, 0} and sk {+1, 0}.
SceneFile scene_pair_volume();

// Single figure-eight matter loop, no geometric loops: self-linking +1.
SceneFile scene_figure_eight();

// Single paperclip matter loop with the coarse eps schedule that triggers
// the unstable-framing error.
SceneFile scene_unstable_frame();

// Hopf-type pair with axis-aligned (untilted) circles: the geometric circle
// lies in the x-z plane, so its projection to plane 1 (the y-z plane) or
// plane 3 degenerates for some strands and crossing extraction raises
// general-position errors unless the scene is jittered.
SceneFile scene_axis_hopf();

}  // namespace linkvol::samples
