#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linkvol/geometry.hpp"

namespace linkvol {

// One matter component as stored on disk: a closed polygonal loop in
// R x R^3, a unit normal field (one normal per vertex), and its coloring.
struct SceneMatter {
    std::vector<Point4> vertices;
    std::vector<Vec3> normals;
    double j_plus = 0.5;
    double j_minus = 0.5;
};

struct SceneGeometric {
    std::vector<Point4> vertices;
};

// Plain-text scene description.  The canonical form is line oriented:
//
//   scene <name>
//   charge <q>
//   plane <k>
//   kappa_schedule <k1> <k2> ...
//   eps_schedule <e1> <e2> ...
//   vol_eps_schedule <e1> <e2> ...
//   min_spatial_sep <d>
//   tube_radius <r>
//   max_cell <h>
//   boundary_tol <tol>
//   matter <j_plus> <j_minus>
//   v <t> <x> <y> <z>  n <nx> <ny> <nz>
//   ...
//   end
//   geometric
//   v <t> <x> <y> <z>
//   ...
//   end
//   region
//   box <lox> <loy> <loz> <hix> <hiy> <hiz>
//   ...
//   end
//
// Blank lines and lines starting with '#' are ignored on input; numbers are
// rendered with "%.17g" on output so serialize/parse round-trips exactly.
struct SceneFile {
    std::string name = "scene";
    double charge = 1.0;
    int plane = 3;
    std::vector<double> kappa_schedule;
    std::vector<double> eps_schedule;
    std::vector<double> vol_eps_schedule;
    double min_spatial_sep = 0.05;
    double tube_radius = 0.75;
    double max_cell = 1.0;
    double boundary_tol = 1e-6;
    std::vector<SceneMatter> matter;
    std::vector<SceneGeometric> geometric;
    std::vector<Box3> region_boxes;

    Hyperlink hyperlink() const;
    Region3 region() const;
};

// Parses scene text.  `origin` names the source (file path or "<string>")
// for diagnostics.  Throws Error with ErrorCategory::syntax for malformed
// lines (message carries the 1-based line number) and ErrorCategory::validation
// for structurally invalid content (no matter loops, loops with fewer than
// three vertices, degenerate boxes, bad schedules).
SceneFile parse_scene(const std::string& text, const std::string& origin = "<string>");

// Reads and parses a scene file from disk.
SceneFile load_scene(const std::string& path);

// Canonical serialization: fixed key order, "%.17g" numbers, one vertex per
// line.  parse_scene(serialize_scene(s)) == s field-for-field, and
// serialize(parse(serialize(s))) is byte-identical to serialize(s).
std::string serialize_scene(const SceneFile& scene);

// Writes the canonical form to disk.
void save_scene(const SceneFile& scene, const std::string& path);

// FNV-1a 64-bit hash of the canonical serialization; identifies a scene in
// result records independent of the file it came from.
std::uint64_t scene_hash(const SceneFile& scene);
std::string scene_hash_hex(const SceneFile& scene);

// Deterministic perturbation used to escape non-generic configurations:
// every spatial coordinate (loop vertices and region corners; never times,
// normals, or schedules) receives an independent uniform offset in
// [-amplitude, amplitude] drawn from mt19937_64(seed) in serialization
// order.  Frame normals are re-normalized implicitly on use.
SceneFile jitter_scene(const SceneFile& scene, std::uint64_t seed, double amplitude = 1e-3);

}  // namespace linkvol
