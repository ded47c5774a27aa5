#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "fracperim/kernel.hpp"

using namespace fracperim;

namespace {

// Independent check for the closed form: adaptive Simpson in y nested inside
// adaptive Simpson in x. Slow but only touches smooth separated integrands.
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 24);
}

double brute_interaction(double a, double b, double c, double d, double s) {
    auto outer = [&](double x) {
        auto inner = [&](double y) { return std::pow(y - x, -1.0 - s); };
        return integrate(inner, c, d, 1e-13);
    };
    return integrate(outer, a, b, 1e-12);
}

// antiderivative route: same quantity via t -> t^(1-s) differences
double closed_form(double a, double b, double c, double d, double s) {
    auto g = [&](double t) { return std::pow(t, 1.0 - s); };
    return (g(c - a) - g(c - b) - g(d - a) + g(d - b)) / (s * (1.0 - s));
}

} // namespace

TEST_CASE("interval interaction closed form at s = 1/2") {
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    CHECK(interval_interaction(0, 1, 2, 3, 0.5) ==
          doctest::Approx(4.0 * (2.0 * r2 - 1.0 - r3)).epsilon(1e-13));
    CHECK(interval_interaction(0, 1, 1, 2, 0.5) ==
          doctest::Approx(4.0 * (2.0 - r2)).epsilon(1e-13));
}

TEST_CASE("interval interaction matches brute-force quadrature") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> len(0.2, 1.5), gap(0.05, 2.0), sv(0.1, 0.9);
    for (int t = 0; t < 20; ++t) {
        double a = -1.0 + gap(rng);
        double b = a + len(rng);
        double c = b + gap(rng);
        double d = c + len(rng);
        double s = sv(rng);
        double exact = interval_interaction(a, b, c, d, s);
        CHECK(exact == doctest::Approx(brute_interaction(a, b, c, d, s)).epsilon(1e-8));
        CHECK(exact == doctest::Approx(closed_form(a, b, c, d, s)).epsilon(1e-11));
    }
}

TEST_CASE("interval interaction validates order and s") {
    CHECK_THROWS(interval_interaction(0, 1, 0.5, 2, 0.5)); // overlapping
    CHECK_THROWS(interval_interaction(1, 0, 2, 3, 0.5));   // reversed
    CHECK_THROWS_AS(validate_s(0.0), std::invalid_argument);
    CHECK_THROWS_AS(validate_s(1.0), std::invalid_argument);
    CHECK_THROWS_AS(validate_s(-0.3), std::invalid_argument);
    CHECK_NOTHROW(validate_s(0.5));
}

TEST_CASE("ray interaction equals the d -> inf limit") {
    // \int_0^1 \int_1^inf (y-x)^(-1-s) = 1/(s(1-s))
    for (double s : {0.25, 0.5, 0.75}) {
        CHECK(interval_ray_interaction(0, 1, 1, s) ==
              doctest::Approx(1.0 / (s * (1.0 - s))).epsilon(1e-13));
        double far = interval_interaction(0, 1, 2, 1e9, s);
        CHECK(interval_ray_interaction(0, 1, 2, s) == doctest::Approx(far).epsilon(1e-6));
    }
}

TEST_CASE("pair interaction is symmetric and handles rays") {
    Interval1D I{0.0, 1.0}, J{1.5, 2.5};
    double s = 0.4;
    CHECK(pair_interaction_1d(I, J, s) == doctest::Approx(pair_interaction_1d(J, I, s)));
    CHECK(pair_interaction_1d(I, J, s) ==
          doctest::Approx(interval_interaction(0, 1, 1.5, 2.5, s)));

    Interval1D right_ray{3.0, std::numeric_limits<double>::infinity()};
    CHECK(pair_interaction_1d(I, right_ray, s) ==
          doctest::Approx(interval_ray_interaction(0, 1, 3, s)));
    Interval1D left_ray{-std::numeric_limits<double>::infinity(), -1.0};
    // mirror image of the right-ray case
    CHECK(pair_interaction_1d(I, left_ray, s) ==
          doctest::Approx(interval_ray_interaction(-1, 0, 1, s)));
}

TEST_CASE("set interaction is additive over components") {
    double s = 0.6;
    IntervalSet A({{0.0, 1.0}, {2.0, 3.0}});
    IntervalSet B({{4.0, 5.0}, {6.0, 7.0}});
    double total = interval_sets_interaction(A, B, s);
    double parts = interval_interaction(0, 1, 4, 5, s) + interval_interaction(0, 1, 6, 7, s) +
                   interval_interaction(2, 3, 4, 5, s) + interval_interaction(2, 3, 6, 7, s);
    CHECK(total == doctest::Approx(parts).epsilon(1e-13));
    CHECK(total == doctest::Approx(interval_sets_interaction(B, A, s)).epsilon(1e-13));

    // overlapping sets are rejected
    IntervalSet C({{0.5, 4.5}});
    CHECK_THROWS(interval_sets_interaction(A, C, s));
}

TEST_CASE("1D interactions scale like lambda^(1-s)") {
    IntervalSet A({{0.0, 1.0}});
    IntervalSet B({{2.0, 3.5}});
    for (double s : {0.3, 0.7}) {
        double base = interval_sets_interaction(A, B, s);
        for (double lam : {0.5, 2.0, 3.0}) {
            double scaled = interval_sets_interaction(A.scaled(lam), B.scaled(lam), s);
            CHECK(scaled == doctest::Approx(std::pow(lam, 1.0 - s) * base).epsilon(1e-12));
        }
    }
}

TEST_CASE("full-line perimeter of one interval") {
    // P_s((0,1)) = 2/(s(1-s)); equals 8 at s = 1/2
    IntervalSet E({{0.0, 1.0}});
    CHECK(line_perimeter_1d(E, 0.5) == doctest::Approx(8.0).epsilon(1e-13));
    for (double s : {0.2, 0.8})
        CHECK(line_perimeter_1d(E, s) == doctest::Approx(2.0 / (s * (1.0 - s))).epsilon(1e-13));

    // translation invariance, scaling
    CHECK(line_perimeter_1d(E.translated(5.0), 0.5) == doctest::Approx(8.0));
    CHECK(line_perimeter_1d(E.scaled(3.0), 0.4) ==
          doctest::Approx(std::pow(3.0, 0.6) * line_perimeter_1d(E, 0.4)).epsilon(1e-12));

    // two far-apart intervals approach twice the single-interval value
    IntervalSet two({{0.0, 1.0}, {1e7, 1e7 + 1.0}});
    CHECK(line_perimeter_1d(two, 0.5) == doctest::Approx(16.0).epsilon(1e-3));
}

TEST_CASE("chord seminorm counts both ordered pairs") {
    IntervalSet U({{0.0, 1.0}});
    Interval1D chord{-1.0, 2.0};
    double s = 0.5;
    double direct = 2.0 * (interval_interaction(-1, 0, 0, 1, s) + interval_interaction(0, 1, 1, 2, s));
    CHECK(chord_seminorm_1d(U, chord, s) == doctest::Approx(direct).epsilon(1e-12));
    // chord disjoint from U sees nothing
    CHECK(chord_seminorm_1d(U, {2.0, 3.0}, s) == doctest::Approx(0.0));
}

TEST_CASE("sliced interaction agrees with the box fast path") {
    Box2 A{{0.0, 0.0}, {1.0, 1.0}};
    Box2 B{{2.5, 0.0}, {3.5, 1.0}};
    KernelParams k{0.5, 2};
    QuadraturePolicy pol;
    pol.rel_tol = 1e-8;

    Estimate boxes = interaction_2d(A, B, k, pol);
    Estimate sliced = sliced_interaction(slice_box(A), slice_box(B), k.s, pol);
    CHECK(sliced.value == doctest::Approx(boxes.value).epsilon(5e-7));
    CHECK(boxes.error < 1e-6 * boxes.value);

    // polygon route through the same geometry
    PolygonRegion pa({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    PolygonRegion pb({{2.5, 0}, {3.5, 0}, {3.5, 1}, {2.5, 1}});
    Estimate polys = interaction_2d(pa, pb, k, pol);
    CHECK(polys.value == doctest::Approx(boxes.value).epsilon(5e-7));
}

TEST_CASE("2D interaction scales like lambda^(2-s)") {
    Disk A{{0.0, 0.0}, 0.5};
    Disk B{{2.0, 0.5}, 0.4};
    KernelParams k{0.35, 2};
    QuadraturePolicy pol;
    pol.rel_tol = 1e-7;
    double base = interaction_2d(A, B, k, pol).value;
    for (double lam : {0.5, 2.0}) {
        Disk As{{A.c.x * lam, A.c.y * lam}, A.r * lam};
        Disk Bs{{B.c.x * lam, B.c.y * lam}, B.r * lam};
        double scaled = interaction_2d(As, Bs, k, pol).value;
        CHECK(scaled == doctest::Approx(std::pow(lam, 2.0 - k.s) * base).epsilon(1e-5));
    }
    // symmetry
    CHECK(interaction_2d(B, A, k, pol).value == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("overlap area through slices") {
    SlicePtr a = slice_box({{0, 0}, {2, 1}});
    SlicePtr b = slice_box({{1, 0}, {3, 1}});
    CHECK(slice_overlap_area(a, b) == doctest::Approx(1.0).epsilon(1e-6));
    SlicePtr c = slice_disk({{10, 10}, 0.5});
    CHECK(slice_overlap_area(a, c) == doctest::Approx(0.0));
}
