#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracperim/geometry.hpp"

using namespace fracperim;

namespace {

PolygonRegion unit_square() {
    return PolygonRegion({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

} // namespace

TEST_CASE("shoelace area is signed by orientation") {
    std::vector<Vec2> ccw{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<Vec2> cw{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    CHECK(polygon_area(ccw) == doctest::Approx(1.0));
    CHECK(polygon_area(cw) == doctest::Approx(-1.0));
    std::vector<Vec2> tri{{0, 0}, {2, 0}, {0, 3}};
    CHECK(polygon_area(tri) == doctest::Approx(3.0));
}

TEST_CASE("polygon region basic measurements") {
    PolygonRegion sq = unit_square();
    CHECK(sq.area() == doctest::Approx(1.0));
    CHECK(sq.perimeter() == doctest::Approx(4.0));
    CHECK(sq.edge_count() == 4);
    CHECK(sq.bbox().lo.x == doctest::Approx(0.0));
    CHECK(sq.bbox().hi.y == doctest::Approx(1.0));

    CHECK(sq.contains({0.5, 0.5}));
    CHECK(sq.contains({0.01, 0.99}));
    CHECK_FALSE(sq.contains({1.5, 0.5}));
    CHECK_FALSE(sq.contains({0.5, -0.01}));

    // cw input is normalized to the same region
    PolygonRegion sq2({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(sq2.area() == doctest::Approx(1.0));
    CHECK(sq2.contains({0.5, 0.5}));
}

TEST_CASE("degenerate or self-crossing outlines are rejected") {
    CHECK_THROWS_AS(PolygonRegion({{0, 0}, {1, 0}}), std::invalid_argument);
    // bowtie
    CHECK_THROWS(PolygonRegion({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
}

TEST_CASE("boundary distance, signed inside") {
    PolygonRegion sq = unit_square();
    CHECK(sq.boundary_dist({0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(sq.signed_boundary_dist({0.5, 0.5}) == doctest::Approx(-0.5));
    CHECK(sq.boundary_dist({2.0, 0.5}) == doctest::Approx(1.0));
    CHECK(sq.signed_boundary_dist({2.0, 0.5}) == doctest::Approx(1.0));
    CHECK(sq.boundary_dist({0.5, 0.0}) == doctest::Approx(0.0));
    // nearest feature is a corner
    CHECK(sq.boundary_dist({2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("similarity transforms scale area by scale^2") {
    PolygonRegion sq = unit_square();
    SimilarityMap m(2.0, M_PI / 2.0, {1.0, 1.0});
    PolygonRegion t = sq.transformed(m);
    CHECK(t.area() == doctest::Approx(4.0));
    CHECK(t.perimeter() == doctest::Approx(8.0));
    // (1,0) -> rotate 90deg -> (0,1), scale 2 -> (0,2), shift -> (1,3)
    Vec2 img = m(Vec2{1.0, 0.0});
    CHECK(img.x == doctest::Approx(1.0));
    CHECK(img.y == doctest::Approx(3.0));

    PolygonRegion moved = sq.translated({3.0, -1.0});
    CHECK(moved.area() == doctest::Approx(1.0));
    CHECK(moved.contains({3.5, -0.5}));
    CHECK_FALSE(moved.contains({0.5, 0.5}));
}

TEST_CASE("similarity composition applies right map first") {
    SimilarityMap f(1.5, 0.7, {0.3, -0.2});
    SimilarityMap g(0.4, -1.1, {2.0, 0.5});
    SimilarityMap fg = f.compose(g);
    Vec2 p{0.37, -1.42};
    Vec2 direct = f(g(p));
    Vec2 composed = fg(p);
    CHECK(composed.x == doctest::Approx(direct.x).epsilon(1e-13));
    CHECK(composed.y == doctest::Approx(direct.y).epsilon(1e-13));
    CHECK_THROWS_AS(SimilarityMap(0.0, 0.0, Vec2{0, 0}), std::invalid_argument);
}

TEST_CASE("line sections of a square") {
    PolygonRegion sq = unit_square();
    // horizontal line entering at t=1, leaving at t=2
    IntervalSet hit = sq.slice({-1.0, 0.5}, {1.0, 0.0});
    REQUIRE(hit.parts().size() == 1);
    CHECK(hit.parts()[0].lo == doctest::Approx(1.0));
    CHECK(hit.parts()[0].hi == doctest::Approx(2.0));
    CHECK(hit.measure() == doctest::Approx(1.0));

    // diagonal through both corners
    double inv = 1.0 / std::sqrt(2.0);
    IntervalSet diag = sq.slice({0.0, 0.0}, {inv, inv});
    CHECK(diag.measure() == doctest::Approx(std::sqrt(2.0)));

    // a miss
    IntervalSet miss = sq.slice({-1.0, 2.5}, {1.0, 0.0});
    CHECK(miss.empty());
}

TEST_CASE("point to segment distance") {
    Vec2 a{0, 0}, b{1, 0};
    CHECK(point_segment_dist({0.5, 1.0}, a, b) == doctest::Approx(1.0));
    CHECK(point_segment_dist({2.0, 0.0}, a, b) == doctest::Approx(1.0));
    CHECK(point_segment_dist({-3.0, 4.0}, a, b) == doctest::Approx(5.0));
    CHECK(point_segment_dist({0.25, 0.0}, a, b) == doctest::Approx(0.0));
    // degenerate segment
    CHECK(point_segment_dist({3.0, 4.0}, a, a) == doctest::Approx(5.0));
}

TEST_CASE("segment box intersection") {
    Box2 box{{0, 0}, {1, 1}};
    CHECK(segment_box_intersects({-1, 0.5}, {2, 0.5}, box));
    CHECK(segment_box_intersects({0.25, 0.25}, {0.75, 0.75}, box)); // fully inside
    CHECK_FALSE(segment_box_intersects({-1, 2}, {2, 2}, box));
    CHECK_FALSE(segment_box_intersects({2, -1}, {2, 2}, box));
    // clips a corner
    CHECK(segment_box_intersects({0.5, -0.25}, {1.25, 0.5}, box));
}

TEST_CASE("ball sets measure and gaps") {
    BallSet two(2, {{{0.0, 0.0}, 0.5}, {{3.0, 0.0}, 1.0}});
    CHECK(two.measure() == doctest::Approx(M_PI * (0.25 + 1.0)));
    CHECK(two.min_gap() == doctest::Approx(3.0 - 0.5 - 1.0));
    CHECK(two.disks().size() == 2);

    BallSet one(3, {{{0.0, 0.0, 0.0}, 2.0}});
    CHECK(one.measure() == doctest::Approx(4.0 / 3.0 * M_PI * 8.0));
    CHECK(std::isinf(one.min_gap()));

    BallSet seg(1, {{{0.0}, 1.0}, {{5.0}, 1.5}});
    CHECK(seg.measure() == doctest::Approx(2.0 + 3.0));
    CHECK(seg.min_gap() == doctest::Approx(5.0 - 1.0 - 1.5));
}

TEST_CASE("windows classify boxes and report measure") {
    Window full = Window::full();
    CHECK_FALSE(full.bounded());
    CHECK(full.contains({1e9, -1e9}));

    Window ball = Window::disk_window({0, 0}, 2.0);
    CHECK(ball.bounded());
    CHECK(ball.measure() == doctest::Approx(4.0 * M_PI));
    CHECK(ball.diam() == doctest::Approx(4.0));
    CHECK(ball.contains({1.0, 1.0}));
    CHECK_FALSE(ball.contains({2.0, 2.0}));
    CHECK(ball.classify_box({{-0.5, -0.5}, {0.5, 0.5}}) == 1);
    CHECK(ball.classify_box({{5, 5}, {6, 6}}) == 0);
    CHECK(ball.classify_box({{1.5, 1.5}, {2.5, 2.5}}) == 2);

    Window rect = Window::rect_window({{0, 0}, {2, 1}});
    CHECK(rect.measure() == doctest::Approx(2.0));
    CHECK(rect.diam() == doctest::Approx(std::sqrt(5.0)));
    CHECK(rect.classify_box({{0.5, 0.25}, {1.0, 0.75}}) == 1);
    CHECK(rect.classify_box({{-1, -1}, {-0.5, -0.5}}) == 0);
    CHECK(rect.classify_box({{1.5, 0.5}, {2.5, 0.75}}) == 2);
}

TEST_CASE("slice expressions agree with set algebra on sections") {
    SlicePtr box = slice_box({{0, 0}, {2, 2}});
    SlicePtr disk = slice_disk({{2.0, 1.0}, 1.0});
    Vec2 o{-1.0, 1.0}, d{1.0, 0.0};

    IntervalSet sb = box->slice(o, d);
    IntervalSet sd = disk->slice(o, d);

    IntervalSet su = slice_union({box, disk})->slice(o, d);
    CHECK(su.measure() == doctest::Approx(sb.unite(sd).measure()));

    IntervalSet si = slice_intersect(box, disk)->slice(o, d);
    CHECK(si.measure() == doctest::Approx(sb.intersect(sd).measure()));

    IntervalSet sdf = slice_diff(box, disk)->slice(o, d);
    CHECK(sdf.measure() == doctest::Approx(sb.subtract(sd).measure()));

    // complement flips membership off the boundary
    SlicePtr comp = slice_complement(box);
    IntervalSet sc = comp->slice(o, d);
    CHECK(sc.contains_point(0.5));  // t=0.5 -> x=-0.5, outside the box
    CHECK_FALSE(sc.contains_point(2.0)); // x=1, inside
    CHECK_FALSE(comp->bounded());

    // window to_slice: chord of the disk window through its center
    Window w = Window::disk_window({0, 0}, 1.5);
    IntervalSet chord = w.to_slice()->slice({-5, 0}, {1, 0});
    CHECK(chord.measure() == doctest::Approx(3.0));
}

TEST_CASE("disk slice cuts chords of the right length") {
    SlicePtr disk = slice_disk({{0.0, 0.0}, 1.0});
    // offset line y = 0.6: half-chord sqrt(1 - 0.36) = 0.8
    IntervalSet chord = disk->slice({0.0, 0.6}, {1.0, 0.0});
    CHECK(chord.measure() == doctest::Approx(1.6));
    IntervalSet tangent = disk->slice({0.0, 1.0 + 1e-9}, {1.0, 0.0});
    CHECK(tangent.measure() < 1e-4);
}

TEST_CASE("interval unions validate their parts") {
    IntervalUnion u({{0.0, 1.0}, {2.0, 2.5}});
    CHECK(u.measure() == doctest::Approx(1.5));
    CHECK_THROWS(IntervalUnion({}));
}
