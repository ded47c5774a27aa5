#include <doctest.h>

#include <cmath>

#include "fracperim/cell_tree.hpp"
#include "fracperim/kernel.hpp"

using namespace fracperim;

namespace {

PolygonRegion unit_square() {
    return PolygonRegion({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

Box2 point_box(double x, double y) { return Box2{{x, y}, {x, y}}; }

} // namespace

TEST_CASE("leaves partition the root box and bracket the region") {
    PolygonRegion sq = unit_square();
    Box2 root{{-1.0, -1.0}, {2.0, 2.0}};
    AdaptiveCellTree tree(*make_polygon_region(sq), root, 8);

    double in = tree.leaf_area(CellTag::Interior);
    double ex = tree.leaf_area(CellTag::Exterior);
    double bd = tree.leaf_area(CellTag::Boundary);
    CHECK(in + ex + bd == doctest::Approx(root.area()).epsilon(1e-12));
    CHECK(tree.leaf_area(CellTag::Internal) == doctest::Approx(0.0));

    // set inclusion: Interior <= area <= Interior + Boundary
    CHECK(in <= sq.area() + 1e-12);
    CHECK(in + bd >= sq.area() - 1e-12);

    CHECK(tree.leaf_count(CellTag::Boundary) ==
          tree.leaf_boxes(CellTag::Boundary).size());

    // children sit in a contiguous block right after their parent expands
    for (const auto& nd : tree.nodes()) {
        if (nd.tag != CellTag::Internal) continue;
        REQUIRE(nd.child0 > 0);
        for (int k = 0; k < 4; ++k) {
            const CellNode& ch = tree.nodes()[nd.child0 + k];
            CHECK(ch.depth == nd.depth + 1);
            CHECK(nd.box.contains(ch.box.center()));
        }
    }
}

TEST_CASE("boundary layer thins as the depth grows") {
    PolygonRegion sq = unit_square();
    Box2 root{{-0.5, -0.5}, {1.5, 1.5}};
    double prev_area = 1e9, prev_leaf = 1e9;
    for (int depth : {4, 6, 8, 10}) {
        AdaptiveCellTree tree(*make_polygon_region(sq), root, depth);
        double bd = tree.leaf_area(CellTag::Boundary);
        double ml = tree.max_boundary_leaf_size();
        CHECK(bd < prev_area);
        CHECK(ml < prev_leaf);
        prev_area = bd;
        prev_leaf = ml;
        // perimeter 4 at cell size 2/2^depth: boundary area ~ 4 * cellsize
        CHECK(bd <= 4.0 * 3.0 * (2.0 / (1 << depth)));
    }
}

TEST_CASE("boundary leaf count of a disk tracks its circumference") {
    AdaptiveCellTree tree(*make_disk_region({{{0, 0}, 1.0}}), Box2{{-1, -1}, {1, 1}}, 6);
    double h = 2.0 / 64.0;
    double expected = 2.0 * M_PI / h; // crossed cells per unit length ~ 1/h
    double nb = (double)tree.leaf_count(CellTag::Boundary);
    CHECK(nb > 0.5 * expected);
    CHECK(nb < 2.0 * expected);
}

TEST_CASE("distance queries against the boundary leaf union") {
    PolygonRegion sq = unit_square();
    AdaptiveCellTree tree(*make_polygon_region(sq), Box2{{-0.5, -0.5}, {1.5, 1.5}}, 9);
    double slack = 2.0 * tree.max_boundary_leaf_size();

    CHECK(tree.boundary_min_dist(point_box(0.5, 0.0)) <= slack);
    CHECK(tree.boundary_min_dist(point_box(0.0, 0.0)) <= slack);
    CHECK(tree.boundary_min_dist(point_box(0.5, 0.5)) ==
          doctest::Approx(0.5).epsilon(0.05));
    CHECK(tree.boundary_min_dist(point_box(0.5, -0.4)) ==
          doctest::Approx(0.4).epsilon(0.05));

    // minmax dominates min and is tight for points on the boundary
    Box2 q = point_box(0.3, 1.0);
    CHECK(tree.boundary_minmax_dist(q) >= tree.boundary_min_dist(q));
    CHECK(tree.boundary_minmax_dist(q) <= 2.0 * slack);
}

TEST_CASE("tube volume around a polygonal circle") {
    std::vector<Vec2> poly;
    for (int i = 0; i < 256; ++i) {
        double t = 2.0 * M_PI * i / 256.0;
        poly.push_back({std::cos(t), std::sin(t)});
    }
    AdaptiveCellTree tree(*make_polygon_region(PolygonRegion(poly)),
                          Box2{{-1.3, -1.3}, {1.3, 1.3}}, 10);
    Estimate tube = tubular_volume(tree, 0.1, Window::full());
    double target = 0.4 * M_PI; // annulus 0.9 < r < 1.1
    CHECK(tube.value == doctest::Approx(target).epsilon(0.05));
    CHECK(tube.rigorous);
    CHECK(tube.lower() <= tube.upper());
}

TEST_CASE("tube volume around a near-segment is a stadium") {
    double e = 0.001;
    PolygonRegion thin({{0, -e}, {1, -e}, {1, e}, {0, e}});
    AdaptiveCellTree tree(*make_polygon_region(thin), Box2{{-0.2, -0.2}, {1.2, 0.2}}, 10);
    Estimate tube = tubular_volume(tree, 0.1, Window::full());
    double target = 2.0 * 0.1 * 1.0 + M_PI * 0.01;
    CHECK(tube.value == doctest::Approx(target).epsilon(0.05));
    CHECK(tube.rigorous);
}

TEST_CASE("tube bracket contains the exact square ring area") {
    PolygonRegion sq = unit_square();
    AdaptiveCellTree tree(*make_polygon_region(sq), Box2{{-0.5, -0.5}, {1.5, 1.5}}, 9);
    for (double rho : {0.25, 0.125}) {
        Estimate tube = tubular_volume(tree, rho, Window::full());
        double truth = 8.0 * rho + (M_PI - 4.0) * rho * rho;
        CHECK(tube.lower() <= truth);
        CHECK(tube.upper() >= truth);
        CHECK(tube.rigorous);
    }
    // below twice the leaf size the bracket degrades and says so
    Estimate coarse = tubular_volume(tree, 1e-4, Window::full());
    CHECK_FALSE(coarse.rigorous);

    // clipping to a window cuts the ring
    Window half = Window::rect_window(Box2{{-0.5, -0.5}, {0.5, 1.5}});
    Estimate clipped = tubular_volume(tree, 0.125, half);
    Estimate whole = tubular_volume(tree, 0.125, Window::full());
    CHECK(clipped.value < whole.value);
    CHECK(clipped.value > 0.25 * whole.value);
}

TEST_CASE("dual-tree interaction matches the direct rule") {
    PolygonRegion a({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    PolygonRegion b({{2.5, 0}, {3.5, 0}, {3.5, 1}, {2.5, 1}});
    AdaptiveCellTree ta(*make_polygon_region(a), a.bbox(), 7);
    AdaptiveCellTree tb(*make_polygon_region(b), b.bbox(), 7);
    KernelParams k{0.5, 2};
    QuadraturePolicy pol;
    pol.rel_tol = 1e-7;

    double ref = interaction_2d(a, b, k, pol).value;
    Estimate tc = treecode_interaction(ta, tb, k, pol);
    CHECK(std::abs(tc.value - ref) <= tc.error + 1e-6 * ref);
    CHECK(tc.error < 0.05 * ref); // bracket tight at depth 7 for separated squares
}
