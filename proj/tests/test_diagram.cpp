#include <cmath>

#include "doctest.h"
#include "linkvol/diagram.hpp"
#include "linkvol/errors.hpp"
#include "linkvol/samples.hpp"
#include "oracles.hpp"

using namespace linkvol;

namespace {

PlanarLoop planar(const std::vector<Point4>& verts, int plane) {
    return project_plane(project_time(make_loop(verts)), plane);
}

ErrorCategory thrown_category(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.category();
    }
    FAIL("expected an error");
    return ErrorCategory::internal;
}

}  // namespace

TEST_CASE("crossing sign convention") {
    CHECK(crossing_sign(Vec2{1, 0}, Vec2{0, 1}) == 1);
    CHECK(crossing_sign(Vec2{0, 1}, Vec2{1, 0}) == -1);
    CHECK(crossing_sign(Vec2{1, 1}, Vec2{1, -1}) == -1);
}

TEST_CASE("hopf pair crossings are pinned") {
    const SceneFile s = samples::scene_hopf_pair();
    const Hyperlink h = s.hyperlink();
    const PlanarLoop a = project_plane(project_time(h.matter[0].loop), 3);
    const PlanarLoop b = project_plane(project_time(h.geometric[0]), 3);
    const std::vector<Crossing> xs = find_crossings(a, b);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0].s_a == doctest::Approx(0.0015092847630472717).epsilon(1e-12));
    CHECK(xs[0].s_b == doctest::Approx(0.73984183963951655).epsilon(1e-12));
    CHECK(xs[0].sign == -1);
    CHECK(xs[0].a_over);
    CHECK(xs[1].s_a == doctest::Approx(0.95936589781749215).epsilon(1e-12));
    CHECK(xs[1].sign == -1);
    CHECK_FALSE(xs[1].a_over);
}

TEST_CASE("crossings match the chord oracle on the corpus pairs") {
    for (const SceneFile& s : {samples::scene_hopf_pair(), samples::scene_double_wind()}) {
        const Hyperlink h = s.hyperlink();
        for (int plane : {1, 2, 3}) {
            CAPTURE(s.name);
            CAPTURE(plane);
            const PlanarLoop a = project_plane(project_time(h.matter[0].loop), plane);
            const PlanarLoop b = project_plane(project_time(h.geometric[0]), plane);
            const std::vector<Crossing> xs = find_crossings(a, b);
            const std::vector<oracle::ChordCrossing> os = oracle::chord_crossings(a, b);
            REQUIRE(xs.size() == os.size());
            for (std::size_t i = 0; i < xs.size(); ++i) {
                CHECK(xs[i].s_a == doctest::Approx(os[i].s_a).epsilon(1e-9));
                CHECK(xs[i].s_b == doctest::Approx(os[i].s_b).epsilon(1e-9));
                CHECK(xs[i].sign == os[i].sign);
                CHECK(xs[i].a_over == os[i].a_over);
            }
        }
    }
}

TEST_CASE("linking number is plane invariant on the tilted pairs") {
    for (const SceneFile& s :
         {samples::scene_split_pair(), samples::scene_hopf_pair(), samples::scene_double_wind()}) {
        const Hyperlink h = s.hyperlink();
        const SpatialLoop m = project_time(h.matter[0].loop);
        const SpatialLoop g = project_time(h.geometric[0]);
        const int l1 = linking_number(project_plane(m, 1), project_plane(g, 1));
        const int l2 = linking_number(project_plane(m, 2), project_plane(g, 2));
        const int l3 = linking_number(project_plane(m, 3), project_plane(g, 3));
        CAPTURE(s.name);
        CHECK(l1 == l2);
        CHECK(l2 == l3);
    }
}

TEST_CASE("figure eight has one pinned self-crossing") {
    const PlanarLoop p = planar(samples::figure_eight(), 3);
    const std::vector<Crossing> xs = find_self_crossings(p);
    REQUIRE(xs.size() == 1);
    // The two passes through the waist at the planar origin sit exactly half
    // the arc length apart by the curve's symmetry.
    CHECK(xs[0].s_a == doctest::Approx(0.4820045836019427).epsilon(1e-12));
    CHECK(xs[0].s_b == doctest::Approx(0.98200458360194265).epsilon(1e-12));
    CHECK(xs[0].s_b - xs[0].s_a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(xs[0].pos.x) <= 1e-12);
    CHECK(std::abs(xs[0].pos.y) <= 1e-12);
    CHECK(xs[0].sign == 1);
}

TEST_CASE("general position failures carry the right category") {
    // Depth tie: constant-time coplanar squares whose outlines cross.
    const std::vector<Point4> sq1 = {Point4{0.1, -1, -1, 0}, Point4{0.1, 1, -1, 0},
                                     Point4{0.1, 1, 1, 0}, Point4{0.1, -1, 1, 0}};
    std::vector<Point4> sq2 = sq1;
    for (Point4& p : sq2) {
        p.t = -0.2;
        p.x += 1.0;
        p.y += 0.41;
    }
    CHECK(thrown_category([&] { find_crossings(planar(sq1, 3), planar(sq2, 3)); }) ==
          ErrorCategory::general_position);

    // Collinear overlap: shifted along a shared edge line, distinct depths.
    std::vector<Point4> sq3 = sq1;
    for (Point4& p : sq3) {
        p.t = -0.2;
        p.x += 1.0;
        p.z += 0.5;
    }
    CHECK(thrown_category([&] { find_crossings(planar(sq1, 3), planar(sq3, 3)); }) ==
          ErrorCategory::general_position);

    // Endpoint hit: the axis-aligned pair projected onto plane 1 puts a
    // matter vertex exactly on the geometric loop's projection.
    const SceneFile ax = samples::scene_axis_hopf();
    const Hyperlink h = ax.hyperlink();
    CHECK(thrown_category([&] {
              find_crossings(project_plane(project_time(h.matter[0].loop), 1),
                             project_plane(project_time(h.geometric[0]), 1));
          }) == ErrorCategory::general_position);
}

TEST_CASE("golden framing extracts two negative half-twists") {
    const SceneFile s = samples::scene_golden_volume();
    const Hyperlink h = s.hyperlink();
    const FramedDiagram fd =
        framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane, s.eps_schedule);
    REQUIRE(fd.half_twists.size() == 2);
    CHECK(fd.nodes.empty());
    CHECK(fd.half_twists[0].sign == -1);
    CHECK(fd.half_twists[1].sign == -1);
    CHECK(fd.half_twists[0].s == doctest::Approx(0.1798).epsilon(2e-3));
    CHECK(fd.half_twists[1].s == doctest::Approx(0.7033).epsilon(2e-3));
    CHECK(self_linking(fd) == -1);
}

TEST_CASE("figure eight framing resolves into a node") {
    const SceneFile s = samples::scene_figure_eight();
    const Hyperlink h = s.hyperlink();
    const FramedDiagram fd =
        framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane, s.eps_schedule);
    CHECK(fd.half_twists.empty());
    REQUIRE(fd.nodes.size() == 1);
    CHECK(fd.nodes[0].sign == 1);
    CHECK(fd.nodes[0].s_a == doctest::Approx(0.4820045836019427).epsilon(1e-4));
    CHECK(fd.nodes[0].s_b == doctest::Approx(0.98200458360194265).epsilon(1e-4));
    CHECK(self_linking(fd) == 1);
}

TEST_CASE("paperclip framing is unstable on the coarse schedule") {
    const SceneFile s = samples::scene_unstable_frame();
    const Hyperlink h = s.hyperlink();
    CHECK(thrown_category([&] {
              framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane, s.eps_schedule);
          }) == ErrorCategory::unstable_framing);
    const FramedDiagram fd = framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane,
                                            {0.075, 0.0375, 0.01875});
    CHECK(fd.half_twists.empty());
    CHECK(fd.nodes.empty());
    CHECK(self_linking(fd) == 0);
}

TEST_CASE("framing schedule preconditions") {
    const SceneFile s = samples::scene_golden_volume();
    const Hyperlink h = s.hyperlink();
    CHECK(thrown_category([&] {
              framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane, {0.3, 0.15});
          }) == ErrorCategory::precondition);
    CHECK(thrown_category([&] {
              framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane, {0.15, 0.3, 0.1});
          }) == ErrorCategory::precondition);
}

TEST_CASE("odd half-twist counts are rejected") {
    FramedDiagram d;
    d.half_twists.push_back(HalfTwist{0, 0.5, Vec2{0, 0}, 1});
    CHECK(thrown_category([&] { self_linking(d); }) == ErrorCategory::unstable_framing);
}

TEST_CASE("twist counting against the region and its boundary") {
    const SceneFile s = samples::scene_golden_volume();
    const Hyperlink h = s.hyperlink();
    CHECK(tdp(h.matter[0].loop, h.matter[0].frame, s.region(), s.plane, s.eps_schedule,
              s.boundary_tol) == 2);

    Region3 far;
    far.boxes = {Box3{Vec3{5, 5, 5}, Vec3{6, 6, 6}}};
    CHECK(tdp(h.matter[0].loop, h.matter[0].frame, far, s.plane, s.eps_schedule,
              s.boundary_tol) == 0);

    // One box covering only the first half-twist.
    Region3 one;
    one.boxes = {s.region_boxes[0]};
    CHECK(tdp(h.matter[0].loop, h.matter[0].frame, one, s.plane, s.eps_schedule,
              s.boundary_tol) == 1);

    // A box whose projected edge passes through the half-twist position.
    const FramedDiagram fd =
        framed_diagram(h.matter[0].loop, h.matter[0].frame, s.plane, s.eps_schedule);
    Region3 grazing;
    const Vec2 pos = fd.half_twists[0].pos;
    grazing.boxes = {Box3{Vec3{pos.x, pos.y - 0.2, -0.4}, Vec3{pos.x + 0.4, pos.y + 0.2, 0.4}}};
    CHECK(thrown_category([&] {
              tdp(h.matter[0].loop, h.matter[0].frame, grazing, s.plane, s.eps_schedule,
                  s.boundary_tol);
          }) == ErrorCategory::degenerate_region);
}

TEST_CASE("full diagram assembly") {
    const SceneFile s = samples::scene_hopf_pair();
    const LinkDiagram d = build_diagram(s.hyperlink(), s.plane, s.eps_schedule);
    CHECK(d.n_matter == 1);
    CHECK(d.crossings.size() == 2);
    CHECK(d.self_crossings.empty());
    REQUIRE(d.framing.size() == 1);
    CHECK(d.framing[0].half_twists.size() == 2);

    const SceneFile split = samples::scene_split_pair();
    const LinkDiagram ds = build_diagram(split.hyperlink(), split.plane, split.eps_schedule);
    CHECK(ds.crossings.empty());
}
