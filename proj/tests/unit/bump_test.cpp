#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "untangle/bump.hpp"

using namespace untangle;

TEST_CASE("smooth_step_raw vanishes exactly for t <= 0") {
    CHECK(smooth_step_raw(0.0) == 0.0);
    CHECK(smooth_step_raw(-1.0) == 0.0);
    CHECK(smooth_step_raw(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(smooth_step_raw_deriv(0.0) == 0.0);
    CHECK(smooth_step_raw_deriv(-2.0) == 0.0);
}

TEST_CASE("bump plateaus are exact, including the edges") {
    CHECK(bump_eval(1.0, 2.0, 0.0) == 1.0);
    CHECK(bump_eval(1.0, 2.0, 0.5) == 1.0);
    CHECK(bump_eval(1.0, 2.0, 1.0) == 1.0);  // inner edge inclusive
    CHECK(bump_eval(1.0, 2.0, 1.0 + 1e-13) == 1.0);
    CHECK(bump_eval(1.0, 2.0, 2.0) == 0.0);  // outer edge inclusive
    CHECK(bump_eval(1.0, 2.0, 2.0 - 1e-13) == 0.0);
    CHECK(bump_eval(1.0, 2.0, 5.0) == 0.0);
}

TEST_CASE("bump midpoint is one half by symmetry") {
    CHECK(bump_eval(1.0, 2.0, 1.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bump_eval(0.0, 4.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bump is monotone decreasing with values in [0,1]") {
    double prev = 1.0;
    for (int i = 0; i <= 400; ++i) {
        double s = 0.5 + 2.0 * i / 400.0;
        double v = bump_eval(1.0, 2.0, s);
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("bump_deriv matches finite differences and is nonpositive") {
    for (double s : {1.1, 1.25, 1.5, 1.75, 1.9}) {
        double h = 1e-6;
        double fd = (bump_eval(1.0, 2.0, s + h) - bump_eval(1.0, 2.0, s - h)) / (2.0 * h);
        double an = bump_deriv(1.0, 2.0, s);
        CHECK(an <= 0.0);
        CHECK(an == doctest::Approx(fd).epsilon(1e-5));
    }
    CHECK(bump_deriv(1.0, 2.0, 0.5) == 0.0);
    CHECK(bump_deriv(1.0, 2.0, 2.5) == 0.0);
}

TEST_CASE("bump rejects a degenerate interval") {
    CHECK_THROWS_AS(bump_eval(2.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bump_eval(3.0, 2.0, 1.0), std::invalid_argument);
}
