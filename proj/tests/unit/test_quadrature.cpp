#include <doctest.h>

#include <cmath>

#include "fracperim/kernel.hpp"
#include "fracperim/quadrature.hpp"

using namespace fracperim;

TEST_CASE("gauss rules integrate polynomials exactly") {
    for (int order : {2, 4, 6, 10}) {
        const auto& x = gauss_nodes(order);
        const auto& w = gauss_weights(order);
        REQUIRE(x.size() == (size_t)order);
        REQUIRE(w.size() == (size_t)order);
        double wsum = 0.0;
        for (double wi : w) wsum += wi;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14)); // integral of 1

        // degree 2*order-1 monomial: \int_-1^1 t^(2k) = 2/(2k+1)
        int k = order - 1;
        double acc = 0.0;
        for (int i = 0; i < order; ++i) acc += w[i] * std::pow(x[i], 2 * k);
        CHECK(acc == doctest::Approx(2.0 / (2.0 * k + 1.0)).epsilon(1e-12));

        // odd powers vanish by symmetry
        double odd = 0.0;
        for (int i = 0; i < order; ++i) odd += w[i] * std::pow(x[i], 3);
        CHECK(odd == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    }
}

TEST_CASE("adaptive panels hit smooth and kinked integrands") {
    AdaptiveOptions opt;
    opt.rel_tol = 1e-12;

    auto smooth = [](double t) { return std::pair{std::exp(t), 0.0}; };
    Estimate e = integrate_adaptive(smooth, {0.0, 1.0}, opt);
    CHECK(e.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(e.rigorous);
    CHECK(std::abs(e.value - (std::exp(1.0) - 1.0)) <= e.error + 1e-14);

    // |t| over [-1, 1] with the kink declared as a breakpoint
    auto kink = [](double t) { return std::pair{std::abs(t), 0.0}; };
    Estimate k = integrate_adaptive(kink, {-1.0, 0.0, 1.0}, opt);
    CHECK(k.value == doctest::Approx(1.0).epsilon(1e-13));

    // integrable endpoint singularity t^(-1/2)
    AdaptiveOptions loose;
    loose.rel_tol = 1e-9;
    loose.max_panels = 4000;
    auto sing = [](double t) { return std::pair{1.0 / std::sqrt(t), 0.0}; };
    Estimate s = integrate_adaptive(sing, {1e-12, 1.0}, loose);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("pointwise error bounds accumulate into the estimate") {
    AdaptiveOptions opt;
    opt.rel_tol = 1e-10;
    auto f = [](double t) { return std::pair{t, 0.01}; };
    Estimate e = integrate_adaptive(f, {0.0, 2.0}, opt);
    CHECK(e.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(e.error >= 0.02 * 0.999); // integral of the pointwise bound
}

TEST_CASE("panel budget exhaustion is reported, not hidden") {
    AdaptiveOptions tiny;
    tiny.rel_tol = 1e-15;
    tiny.max_panels = 3;
    auto wiggly = [](double t) { return std::pair{std::sin(50.0 * t * t), 0.0}; };
    Estimate e = integrate_adaptive(wiggly, {0.0, 3.0}, tiny);
    CHECK_FALSE(e.rigorous);
}

TEST_CASE("box pair tensor rule brackets the sliced answer") {
    Box2 A{{0.0, 0.0}, {1.0, 1.0}};
    Box2 B{{3.0, 0.5}, {4.0, 1.5}};
    double s = 0.5;

    QuadraturePolicy pol;
    pol.rel_tol = 1e-9;
    double ref = sliced_interaction(slice_box(A), slice_box(B), s, pol).value;

    for (int order : {4, 6, 8}) {
        Estimate gl = box_pair_interaction_gl(A, B, s, order);
        CHECK(std::abs(gl.value - ref) <= gl.error + 1e-9 * ref);
    }
    // error bound shrinks with the order
    CHECK(box_pair_interaction_gl(A, B, s, 8).error <
          box_pair_interaction_gl(A, B, s, 4).error);
}

TEST_CASE("touching-box upper bound really is an upper bound") {
    double s = 0.5;
    QuadraturePolicy pol;
    pol.rel_tol = 1e-8;

    // close pair
    Box2 A{{0.0, 0.0}, {1.0, 1.0}};
    Box2 B{{1.1, 0.0}, {2.1, 1.0}};
    double val = sliced_interaction(slice_box(A), slice_box(B), s, pol).value;
    CHECK(box_pair_upper_bound(A, B, s) >= val);

    // touching pair: finite bound, no reference value needed
    Box2 C{{1.0, 0.0}, {2.0, 1.0}};
    double bound = box_pair_upper_bound(A, C, s);
    CHECK(std::isfinite(bound));
    CHECK(bound > 0.0);

    // far pair: still an upper bound and not wildly loose
    Box2 D{{10.0, 0.0}, {11.0, 1.0}};
    double far_val = sliced_interaction(slice_box(A), slice_box(D), s, pol).value;
    double far_bound = box_pair_upper_bound(A, D, s);
    CHECK(far_bound >= far_val);
    CHECK(far_bound <= 1e3 * far_val);
}
