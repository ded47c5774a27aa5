#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracperim/interval_set.hpp"
#include "fracperim/perimeter.hpp"

using namespace fracperim;

TEST_CASE("overlapping intervals merge into one component") {
    IntervalSet u({{0.0, 1.0}, {0.5, 2.0}, {3.0, 4.0}});
    REQUIRE(u.parts().size() == 2);
    CHECK(u.parts()[0].lo == 0.0);
    CHECK(u.parts()[0].hi == 2.0);
    CHECK(u.measure() == doctest::Approx(3.0));
}

TEST_CASE("sorting does not depend on input order") {
    IntervalSet a({{2.0, 3.0}, {0.0, 1.0}});
    IntervalSet b({{0.0, 1.0}, {2.0, 3.0}});
    REQUIRE(a.parts().size() == b.parts().size());
    for (size_t i = 0; i < a.parts().size(); ++i) {
        CHECK(a.parts()[i].lo == b.parts()[i].lo);
        CHECK(a.parts()[i].hi == b.parts()[i].hi);
    }
}

TEST_CASE("point membership is open-interval") {
    IntervalSet u({{0.0, 1.0}});
    CHECK(u.contains_point(0.5));
    CHECK(!u.contains_point(-0.5));
    CHECK(!u.contains_point(1.5));
}

TEST_CASE("complement of a bounded set against the whole line") {
    IntervalSet u({{0.0, 1.0}});
    IntervalSet c = u.complement();
    CHECK(c.contains_point(-1.0));
    CHECK(c.contains_point(2.0));
    CHECK(!c.contains_point(0.5));
    // complementing twice restores the set
    IntervalSet cc = c.complement();
    REQUIRE(cc.parts().size() == 1);
    CHECK(cc.parts()[0].lo == doctest::Approx(0.0));
    CHECK(cc.parts()[0].hi == doctest::Approx(1.0));
}

TEST_CASE("boolean identities on sample sets") {
    IntervalSet a({{0.0, 2.0}, {5.0, 6.0}});
    IntervalSet b({{1.0, 3.0}});
    IntervalSet i = a.intersect(b);
    REQUIRE(i.parts().size() == 1);
    CHECK(i.parts()[0].lo == doctest::Approx(1.0));
    CHECK(i.parts()[0].hi == doctest::Approx(2.0));

    IntervalSet u = a.unite(b);
    CHECK(u.measure() == doctest::Approx(4.0)); // (0,3) + (5,6)

    IntervalSet d = a.subtract(b);
    CHECK(d.measure() == doctest::Approx(a.measure() - i.measure()));

    // inclusion-exclusion on measures
    CHECK(u.measure() + i.measure() == doctest::Approx(a.measure() + b.measure()));
}

TEST_CASE("translate and scale act on endpoints") {
    IntervalSet u({{0.0, 1.0}, {2.0, 3.0}});
    IntervalSet t = u.translated(10.0);
    CHECK(t.parts()[0].lo == doctest::Approx(10.0));
    CHECK(t.parts()[1].hi == doctest::Approx(13.0));
    IntervalSet s = u.scaled(2.0);
    CHECK(s.measure() == doctest::Approx(2.0 * u.measure()));
    CHECK_THROWS_AS(u.scaled(-1.0), std::invalid_argument);
}

TEST_CASE("lacunary ladder keeps every second geometric interval") {
    const double a = 0.5;
    const int K = 10;
    IntervalUnion E = lacunary_set(a, K);
    REQUIRE(E.set().parts().size() == (size_t)K);
    // components are (a^{2k+1}, a^{2k}) for k = 1..K, disjoint
    double measure = 0.0;
    for (int k = 1; k <= K; ++k) measure += std::pow(a, 2 * k) - std::pow(a, 2 * k + 1);
    CHECK(E.measure() == doctest::Approx(measure).epsilon(1e-12));
    // all of it sits inside (0, a^2]
    CHECK(E.set().parts().front().lo > 0.0);
    CHECK(E.set().parts().back().hi <= a * a + 1e-15);
}
