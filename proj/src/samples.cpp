#include "linkvol/samples.hpp"

#include <cmath>

namespace linkvol::samples {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Mat3 {
    double m[3][3];
    Vec3 operator*(Vec3 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
        return r;
    }
};

Mat3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
}

Mat3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

// Attitudes chosen so every coordinate-plane projection of either circle is
// a genuine ellipse (no collinear strands, no vertex/depth coincidences).
const Mat3 kRotMatter = rot_z(0.12) * rot_x(0.15);
const Mat3 kRotGeo = rot_z(0.11) * rot_x(0.13);

Point4 at_time(double t, Vec3 p) { return Point4{t, p.x, p.y, p.z}; }

std::vector<Point4> shifted(std::vector<Point4> v, Vec3 d) {
    for (Point4& p : v) {
        p.x += d.x;
        p.y += d.y;
        p.z += d.z;
    }
    return v;
}

SceneFile base_scene(std::string name) {
    SceneFile s;
    s.name = std::move(name);
    s.charge = 1.0;
    s.plane = 3;
    s.kappa_schedule = {4, 8, 16, 32};
    s.eps_schedule = {0.3, 0.15, 0.075};
    s.vol_eps_schedule = {0.3, 0.15};
    s.min_spatial_sep = 0.05;
    s.tube_radius = 0.75;
    s.max_cell = 1.0;
    s.boundary_tol = 1e-6;
    return s;
}

SceneMatter framed_matter_circle(double steep, Vec3 shift = {0, 0, 0}, double t0 = 0.25) {
    SceneMatter m;
    m.vertices = shifted(matter_circle(32, t0), shift);
    m.normals = matter_frame(32, 0.37, 1, steep);
    m.j_plus = 0.5;
    m.j_minus = 0.5;
    return m;
}

}  // namespace

std::vector<Point4> matter_circle(int n, double t0) {
    std::vector<Point4> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double th = 2 * kPi * i / n;
        v.push_back(at_time(t0, kRotMatter * Vec3{std::cos(th), std::sin(th), 0.0}));
    }
    return v;
}

std::vector<Vec3> matter_frame(int n, double phi0, int turns, double steep) {
    std::vector<Vec3> f;
    f.reserve(n);
    const Vec3 mhat = kRotMatter * Vec3{0, 0, 1};
    for (int i = 0; i < n; ++i) {
        const double th = 2 * kPi * i / n;
        const Vec3 rhat = kRotMatter * Vec3{std::cos(th), std::sin(th), 0.0};
        const double psi = turns * th + phi0;
        const double ang = psi - steep * std::sin(2 * psi);
        f.push_back(std::cos(ang) * rhat + std::sin(ang) * mhat);
    }
    return f;
}

std::vector<Point4> geo_circle(int n, double t0) {
    std::vector<Point4> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double th = 2 * kPi * (i + 0.35) / n;
        v.push_back(at_time(t0, kRotGeo * Vec3{std::cos(th), 0.0, std::sin(th)} + Vec3{1, 0, 0}));
    }
    return v;
}

std::vector<Point4> double_wind(int n, double t0, double a) {
    std::vector<Point4> v;
    v.reserve(n);
    const Vec3 bhat{0, 1, 0};
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.35) / n;
        const double phi = 4 * kPi * t;
        const double psi = 2 * kPi * t;
        const Vec3 core{std::cos(phi), 0.0, std::sin(phi)};
        const Vec3 pos = core + a * (std::cos(psi) * core + std::sin(psi) * bhat);
        v.push_back(at_time(t0, kRotGeo * pos + Vec3{1, 0, 0}));
    }
    return v;
}

std::vector<Point4> figure_eight(int n, double t0) {
    std::vector<Point4> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * (i + 0.5) / n;
        v.push_back(Point4{t0, std::sin(t), std::sin(t) * std::cos(t), 0.2 * std::cos(t)});
    }
    return v;
}

std::vector<Vec3> figure_eight_frame(int n) {
    std::vector<Vec3> f;
    f.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * (i + 0.5) / n;
        f.push_back(normalized(Vec3{-std::cos(2 * t), std::cos(t), 0.0}));
    }
    return f;
}

std::vector<Point4> paperclip(double t0) {
    // Stadium outline of half-length L and half-gap g, traversed clockwise,
    // tilted out of the x-y plane (z = 0.3 y) so projected crossings with
    // the displaced copy have well-separated depths.  Cap samples sit at
    // angles pi*(k+0.5)/6 so no displaced vertex lands exactly on the
    // opposite strand line.
    const double g = 0.05, L = 0.6;
    std::vector<Point4> v;
    v.reserve(32);
    auto push = [&](double x, double y) { v.push_back(Point4{t0, x, y, 0.3 * y}); };
    for (int k = 0; k < 10; ++k) push(-L + 2 * L * k / 10, g);
    for (int k = 0; k < 6; ++k) {
        const double b = kPi * (k + 0.5) / 6;
        push(L + g * std::sin(b), g * std::cos(b));
    }
    for (int k = 0; k < 10; ++k) push(L - 2 * L * k / 10, -g);
    for (int k = 0; k < 6; ++k) {
        const double b = kPi * (k + 0.5) / 6;
        push(-L - g * std::sin(b), -g * std::cos(b));
    }
    return v;
}

std::vector<Vec3> paperclip_frame() {
    std::vector<Vec3> f;
    f.reserve(32);
    for (int k = 0; k < 10; ++k) f.push_back(Vec3{0, -1, 0});
    for (int k = 0; k < 6; ++k) {
        const double b = kPi * (k + 0.5) / 6;
        f.push_back(Vec3{-std::sin(b), -std::cos(b), 0});
    }
    for (int k = 0; k < 10; ++k) f.push_back(Vec3{0, 1, 0});
    for (int k = 0; k < 6; ++k) {
        const double b = kPi * (k + 0.5) / 6;
        f.push_back(Vec3{std::sin(b), std::cos(b), 0});
    }
    return f;
}

SceneFile scene_split_pair() {
    SceneFile s = base_scene("split_pair");
    s.matter.push_back(framed_matter_circle(0.0));
    s.geometric.push_back(SceneGeometric{shifted(geo_circle(), Vec3{6, 0, 0})});
    return s;
}

SceneFile scene_hopf_pair() {
    SceneFile s = base_scene("hopf_pair");
    s.matter.push_back(framed_matter_circle(0.0));
    s.geometric.push_back(SceneGeometric{geo_circle()});
    return s;
}

SceneFile scene_double_wind() {
    SceneFile s = base_scene("double_wind");
    s.matter.push_back(framed_matter_circle(0.0));
    s.geometric.push_back(SceneGeometric{double_wind()});
    return s;
}

namespace {

std::vector<Box3> golden_region() {
    const Vec3 c1{0.32, 0.93, 0.13};
    const Vec3 c2{-0.17, -0.97, -0.14};
    const double h = 0.4;
    return {Box3{c1 - h * Vec3{1, 1, 1}, c1 + h * Vec3{1, 1, 1}},
            Box3{c2 - h * Vec3{1, 1, 1}, c2 + h * Vec3{1, 1, 1}}};
}

}  // namespace

SceneFile scene_golden_volume() {
    SceneFile s = base_scene("golden_volume");
    s.kappa_schedule = {16, 32, 64, 128};
    s.matter.push_back(framed_matter_circle(0.45));
    s.geometric.push_back(SceneGeometric{geo_circle()});
    s.region_boxes = golden_region();
    return s;
}

SceneFile scene_pair_volume() {
    SceneFile s = scene_golden_volume();
    s.name = "pair_volume";
    // Distinct constant time: equal-time loops would share two spatial
    // coordinates at coinciding times wherever their y-z shadows cross.
    s.matter.push_back(framed_matter_circle(0.45, Vec3{4, 0, 0}, 0.55));
    return s;
}

SceneFile scene_figure_eight() {
    SceneFile s = base_scene("figure_eight");
    SceneMatter m;
    m.vertices = figure_eight();
    m.normals = figure_eight_frame();
    s.matter.push_back(std::move(m));
    return s;
}

SceneFile scene_unstable_frame() {
    SceneFile s = base_scene("unstable_frame");
    s.min_spatial_sep = 0.01;
    SceneMatter m;
    m.vertices = paperclip();
    m.normals = paperclip_frame();
    s.matter.push_back(std::move(m));
    return s;
}

SceneFile scene_axis_hopf() {
    SceneFile s = base_scene("axis_hopf");
    SceneMatter m;
    const int n = 32;
    for (int i = 0; i < n; ++i) {
        const double th = 2 * kPi * i / n;
        m.vertices.push_back(Point4{0.25, std::cos(th), std::sin(th), 0.0});
        m.normals.push_back(Vec3{std::cos(th), std::sin(th), 0.0});
    }
    s.matter.push_back(std::move(m));
    SceneGeometric g;
    for (int i = 0; i < n; ++i) {
        const double th = 2 * kPi * (i + 0.35) / n;
        g.vertices.push_back(Point4{-0.35, 1.0 + std::cos(th), 0.0, std::sin(th)});
    }
    s.geometric.push_back(std::move(g));
    return s;
}

}  // namespace linkvol::samples
