#include <cmath>
#include <limits>

#include "doctest.h"
#include "endopriv/equilibrium.hpp"

using namespace endopriv;

namespace {

EquilibriumSet points(std::initializer_list<double> alphas) {
    EquilibriumSet s;
    for (double a : alphas) {
        EquilibriumPoint p;
        p.alpha = a;
        s.points.push_back(p);
    }
    return s;
}

}  // namespace

TEST_SUITE("equilibrium") {

TEST_CASE("set distance") {
    CHECK(set_distance(EquilibriumSet{}, EquilibriumSet{}) == 0.0);
    CHECK(std::isinf(set_distance(points({0.5}), EquilibriumSet{})));
    CHECK(set_distance(points({0.5, 1.0}), points({0.5, 1.0})) == 0.0);
    CHECK(set_distance(points({0.5}), points({0.5, 1.0})) == doctest::Approx(0.5));
    CHECK(set_distance(points({0.5, 1.0}), points({0.51, 0.99})) == doctest::Approx(0.01));

    EquilibriumSet iv;
    iv.intervals.push_back({0.5, 1.0});
    // The midpoint of [0.5, 1] is 0.25 away from both points.
    CHECK(set_distance(iv, points({0.5, 1.0})) == doctest::Approx(0.25));
    CHECK(set_distance(iv, points({0.5, 0.75, 1.0})) == doctest::Approx(0.125));
    EquilibriumSet iv2;
    iv2.intervals.push_back({0.499, 1.0});
    CHECK(set_distance(iv, iv2) == doctest::Approx(0.001));
}

TEST_CASE("contains and normalize") {
    EquilibriumSet s = points({1.0, 0.3});
    s.intervals.push_back({0.6, 0.7});
    s.normalize();
    CHECK(s.points.front().alpha == 0.3);
    CHECK(s.contains(0.65, 0.0));
    CHECK(s.contains(0.301, 0.002));
    CHECK_FALSE(s.contains(0.5, 0.01));
    CHECK(s.size() == 3);
}

TEST_CASE("labels") {
    CHECK(to_string(Regime::mixed) == "mixed");
    CHECK(to_string(Source::oracle) == "oracle");
}

}  // TEST_SUITE
