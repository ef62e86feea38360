#include "doctest.h"
#include "rlab/step_profile.hpp"

#include <cmath>

using namespace rlab;

TEST_CASE("from_pieces validates shape") {
    CHECK_THROWS(StepProfile::from_pieces({1.0, 1.0}, {0.0, 1.0, 0.0}));
    CHECK_THROWS(StepProfile::from_pieces({1.0, 2.0}, {0.0, 1.0}));
    CHECK_NOTHROW(StepProfile::from_pieces({1.0, 2.0}, {3.0, 2.0, 0.0}));
}

TEST_CASE("evaluation returns declared-side limits") {
    StepProfile p = StepProfile::from_pieces({1.0, 2.0}, {5.0, 3.0, 0.0}, Side::right);
    CHECK(p(0.5) == 5.0);
    CHECK(p(1.0) == 3.0);  // right limit at the jump
    CHECK(p.value_left(1.0) == 5.0);
    CHECK(p(1.5) == 3.0);
    CHECK(p(2.0) == 0.0);
    CHECK(p(7.0) == 0.0);

    StepProfile q = StepProfile::from_pieces({1.0, 2.0}, {5.0, 3.0, 0.0}, Side::left);
    CHECK(q(1.0) == 5.0);
}

TEST_CASE("exact integration") {
    StepProfile p = StepProfile::from_pieces({1.0, 2.0, 3.0}, {1.5, 1.0, 0.5, 0.0});
    CHECK(p.integrate(0.0, 3.0) == doctest::Approx(1.5 + 1.0 + 0.5).epsilon(1e-15));
    CHECK(p.integrate(0.5, 1.5) == doctest::Approx(0.5 * 1.5 + 0.5 * 1.0).epsilon(1e-15));
    CHECK(p.integrate(2.5, 10.0) == doctest::Approx(0.5 * 0.5).epsilon(1e-15));
    CHECK(p.integrate(3.0, 100.0) == 0.0);
    CHECK(p.integrate(2.0, 2.0) == 0.0);
}

TEST_CASE("monotonicity flags") {
    StepProfile dec = StepProfile::from_pieces({1.0}, {2.0, 1.0});
    CHECK(dec.nonincreasing());
    CHECK_FALSE(dec.nondecreasing());
    StepProfile inc = StepProfile::from_pieces({1.0}, {1.0, 2.0});
    CHECK(inc.nondecreasing());
}

TEST_CASE("combine merges breakpoints pointwise") {
    StepProfile a = StepProfile::from_pieces({1.0}, {1.0, 0.0});
    StepProfile b = StepProfile::from_pieces({0.5, 2.0}, {0.0, 2.0, 0.0});
    StepProfile s = StepProfile::combine(a, b, [](double x, double y) { return x + y; });
    CHECK(s(0.25) == 1.0);
    CHECK(s(0.75) == 3.0);
    CHECK(s(1.5) == 2.0);
    CHECK(s(3.0) == 0.0);
    double integral = StepProfile::integrate_combined(
        a, b, [](double x, double y) { return x * y; }, 0.0, 5.0);
    CHECK(integral == doctest::Approx(0.5 * 1.0 * 2.0).epsilon(1e-15));  // overlap [0.5, 1)
}

TEST_CASE("zero profile") {
    StepProfile z;
    CHECK(z.empty());
    CHECK(z(1.0) == 0.0);
    CHECK(z.integrate(0.0, 10.0) == 0.0);
}
