#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "untangle/datasets.hpp"
#include "untangle/geometry.hpp"
#include "untangle/rng.hpp"

using namespace untangle;

TEST_CASE("dist_set_set on singletons is the point distance") {
    PointCloud a({{0.0, 0.0}});
    PointCloud b({{3.0, 4.0}});
    CHECK(dist_set_set(a, b) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(dist_set_set(a, a) == 0.0);
}

TEST_CASE("dist_set_set subtracts both guards") {
    PointCloud a({{0.0, 0.0}}, 0.1);
    PointCloud b({{3.0, 4.0}}, 0.2);
    CHECK(dist_set_set(a, b) == doctest::Approx(4.7).epsilon(1e-15));
}

TEST_CASE("dist_set_set circle sample vs outside point") {
    // 64 points on the unit circle vs (3, 0): true distance 2, sampling error
    // bounded by the chord spacing 2*sin(pi/64).
    std::vector<Vec> pts;
    for (int k = 0; k < 64; ++k) {
        double a = 2.0 * 3.141592653589793 * k / 64.0;
        pts.push_back({std::cos(a), std::sin(a)});
    }
    double d = dist_set_set(PointCloud(pts), PointCloud({{3.0, 0.0}}));
    CHECK(d == doctest::Approx(2.0).epsilon(1e-12));  // k=0 sample is exactly (1,0)
}

TEST_CASE("dist_set_set symmetry and monotonicity under extra points") {
    SplitMix64 rng = stream_rng(11, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec> pa, pb;
        for (int i = 0; i < 8; ++i) pa.push_back(scale(3.0, sample_unit_ball(rng, 3)));
        for (int i = 0; i < 8; ++i)
            pb.push_back(add(Vec{10.0, 0.0, 0.0}, scale(3.0, sample_unit_ball(rng, 3))));
        PointCloud a(pa), b(pb);
        double d = dist_set_set(a, b);
        CHECK(dist_set_set(b, a) == d);

        std::vector<Vec> paMore = pa;
        paMore.push_back(scale(3.0, sample_unit_ball(rng, 3)));
        CHECK(dist_set_set(PointCloud(paMore), b) <= d);

        std::vector<Vec> paShuf = pa;
        std::reverse(paShuf.begin(), paShuf.end());
        CHECK(dist_set_set(PointCloud(paShuf), b) == d);
    }
}

TEST_CASE("dist_set_set rejects empty clouds") {
    PointCloud a({{0.0, 0.0}});
    CHECK_THROWS_AS(dist_set_set(a, PointCloud{}), std::invalid_argument);
}

TEST_CASE("ball_contains_cloud is strict and guard-aware") {
    Ball b(Vec{0.0, 0.0}, 1.0);
    CHECK(ball_contains_cloud(b, PointCloud({{0.5, 0.0}})));
    CHECK_FALSE(ball_contains_cloud(b, PointCloud({{1.0, 0.0}})));  // boundary
    CHECK_FALSE(ball_contains_cloud(b, PointCloud({{1.5, 0.0}})));
    // ||p|| + guard must stay below the radius.
    CHECK_FALSE(ball_contains_cloud(b, PointCloud({{0.5, 0.0}}, 0.6)));
    CHECK(ball_contains_cloud(b, PointCloud({{0.5, 0.0}}, 0.4)));
    // Positive slack shrinks the allowance.
    CHECK_FALSE(ball_contains_cloud(b, PointCloud({{0.5, 0.0}}, 0.4), 0.2));
}

TEST_CASE("balls_disjoint is strict about tangency") {
    Ball a(Vec{0.0, 0.0}, 1.0);
    CHECK(balls_disjoint(a, Ball(Vec{3.0, 0.0}, 1.0)));
    CHECK_FALSE(balls_disjoint(a, Ball(Vec{2.0, 0.0}, 1.0)));  // touching
    CHECK_FALSE(balls_disjoint(a, Ball(Vec{1.0, 0.0}, 1.0)));
}

TEST_CASE("constructors validate their invariants") {
    CHECK_THROWS_AS(Ball(Vec{0.0, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Ball(Vec{0.0, 0.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud({{0.0, 0.0}}, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud({{0.0, 0.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PointCloud(std::vector<Vec>{{std::nan("")}}), std::invalid_argument);
}

TEST_CASE("LabeledDataset validate catches empties and mixed dimensions") {
    LabeledDataset d;
    d.classes.push_back({0, PointCloud({{0.0, 0.0}}), std::nullopt});
    d.classes.push_back({1, PointCloud({{1.0, 1.0}}), std::nullopt});
    CHECK_NOTHROW(d.validate());
    CHECK(d.dim() == 2);
    d.classes.push_back({2, PointCloud({{1.0, 1.0, 1.0}}), std::nullopt});
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
