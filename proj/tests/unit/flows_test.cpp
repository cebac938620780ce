#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "untangle/bump.hpp"
#include "untangle/chart.hpp"
#include "untangle/flows.hpp"
#include "untangle/rng.hpp"

using namespace untangle;

namespace {
std::vector<Vec> ball_samples(const Vec& center, double radius, std::size_t count,
                              std::uint64_t seed) {
    SplitMix64 rng = stream_rng(seed, 0);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(add(center, scale(radius, sample_unit_ball(rng, center.size()))));
    return out;
}
}  // namespace

TEST_CASE("compression_time and steps_for_time formulas") {
    CHECK(compression_time(1.0, 0.1) ==
          doctest::Approx(std::log(10.0) + 0.1).epsilon(1e-15));
    CHECK(compression_time(2.0, 0.5, 0.0) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(steps_for_time(1.0) == 20);
    CHECK(steps_for_time(0.0) == 0);
    CHECK(steps_for_time(2.302585092994046 + 0.1) == 49);
    CHECK(steps_for_time(0.001) == 1);
    CHECK_THROWS_AS(compression_time(1.0, 2.0), std::invalid_argument);  // delta >= r
    CHECK_THROWS_AS(steps_for_time(-1.0), std::invalid_argument);
}

TEST_CASE("compression field values") {
    FlowMap f = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    Vec v = field_eval(f.field, {0.5, 0.0});
    CHECK(v[0] == doctest::Approx(-0.5).epsilon(1e-15));  // plateau: eta == 1
    CHECK(v[1] == 0.0);

    Vec far = field_eval(f.field, {1.6, 0.0});
    CHECK(far[0] == 0.0);
    CHECK(far[1] == 0.0);

    Vec mid = field_eval(f.field, {1.2, 0.0});
    double eta = bump_eval(1.0, 1.5, 1.2);
    CHECK(mid[0] == doctest::Approx(-eta * 1.2).epsilon(1e-14));
    CHECK(eta > 0.0);
    CHECK(eta < 1.0);
}

TEST_CASE("compression flow matches the plateau closed form e^{-t} x") {
    for (std::size_t dim : {2u, 3u}) {
        Vec center(dim, 0.0);
        FlowMap f = make_compression(center, 1.0, 0.1, 1.5);
        double t = compression_time(1.0, 0.1);
        double worst = 0.0;
        for (const Vec& x : ball_samples(center, 1.0, 200, 31 + dim)) {
            Vec got = flow_apply(f, x);
            Vec want = scale(std::exp(-t), x);
            worst = std::max(worst, dist2(got, want));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("compression maps the unit ball strictly inside B(0, delta)") {
    FlowMap f = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    for (const Vec& x : ball_samples({0.0, 0.0}, 1.0, 300, 77)) {
        CHECK(norm2(flow_apply(f, x)) < 0.1);
    }
}

TEST_CASE("compression leaves points beyond the support bitwise fixed") {
    FlowMap f = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    SplitMix64 rng = stream_rng(13, 0);
    for (int i = 0; i < 100; ++i) {
        Vec u = sample_unit_sphere(rng, 2);
        Vec x = scale(1.6 + 1.4 * rng.next_double(), u);
        Vec y = flow_apply(f, x);
        CHECK(y[0] == x[0]);
        CHECK(y[1] == x[1]);
        Vec z = flow_invert(f, x);
        CHECK(z[0] == x[0]);
        CHECK(z[1] == x[1]);
    }
}

TEST_CASE("compression inverse round-trips") {
    FlowMap f = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    double worst = 0.0;
    for (const Vec& x : ball_samples({0.0, 0.0}, 1.4, 200, 5)) {
        worst = std::max(worst, dist2(flow_invert(f, flow_apply(f, x)), x));
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("default compression support is 1.25 r") {
    FlowMap f = make_compression(Vec{0.0, 0.0}, 2.0, 0.5);
    Vec atEdge = field_eval(f.field, {2.5 + 1e-9, 0.0});
    CHECK(atEdge[0] == 0.0);
    Vec inside = field_eval(f.field, {2.3, 0.0});
    CHECK(inside[0] < 0.0);
}

TEST_CASE("translation carries p exactly to q") {
    SplitMix64 rng = stream_rng(2025, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t dim = 2 + (trial % 3);
        Vec anchor = scale(5.0, sample_unit_ball(rng, dim));
        double r = 0.5 + 2.0 * rng.next_double();
        Vec p = add(anchor, scale(0.8 * r, sample_unit_ball(rng, dim)));
        Vec q = add(anchor, scale(0.8 * r, sample_unit_ball(rng, dim)));
        FlowMap h = make_translation(anchor, r, p, q);
        CHECK(dist2(flow_apply(h, p), q) <= 1e-9);
        CHECK(dist2(flow_invert(h, q), p) <= 1e-9);

        // Outside the support ((delta + r)/2 < r): bitwise identity.
        Vec u = sample_unit_sphere(rng, dim);
        Vec far = add(anchor, scale(r, u));
        Vec moved = flow_apply(h, far);
        for (std::size_t i = 0; i < dim; ++i) CHECK(moved[i] == far[i]);
    }
}

TEST_CASE("translation with p == q is the bitwise identity") {
    Vec anchor{1.0, 2.0};
    Vec p{1.3, 2.1};
    FlowMap h = make_translation(anchor, 1.0, p, p);
    for (const Vec& x : ball_samples(anchor, 2.0, 50, 8)) {
        Vec y = flow_apply(h, x);
        CHECK(y[0] == x[0]);
        CHECK(y[1] == x[1]);
    }
}

TEST_CASE("translation is rigid near p") {
    Vec anchor{0.0, 0.0};
    double r = 1.0;
    Vec p{0.5, 0.0}, q{-0.5, 0.0};  // rho = 0.5, delta = 0.75
    FlowMap h = make_translation(anchor, r, p, q);
    Vec d = sub(q, p);
    // Points within (delta - rho) of p translate exactly with it.
    for (const Vec& y : ball_samples(p, 0.9 * 0.25, 100, 21)) {
        Vec want = add(y, d);
        CHECK(dist2(flow_apply(h, y), want) <= 1e-12);
    }
}

TEST_CASE("translation validates its geometry") {
    Vec a{0.0, 0.0};
    CHECK_THROWS_AS(make_translation(a, 1.0, Vec{1.0, 0.0}, Vec{0.0, 0.0}),
                    std::invalid_argument);  // p on the boundary
    CHECK_THROWS_AS(make_translation(a, 1.0, Vec{0.0, 0.0}, Vec{1.5, 0.0}),
                    std::invalid_argument);  // q outside
    CHECK_THROWS_AS(make_translation(a, 1.0, Vec{0.0, 0.0}, Vec{0.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("chart compression with the identity chart behaves like compression") {
    ChartPtr id = make_identity_chart(2);
    Ball target(Vec{0.0, 0.0}, 0.05);
    FlowMap f = make_chart_compression(id, 0.5, target);
    for (const Vec& x : ball_samples({0.0, 0.0}, 0.5, 100, 3)) {
        CHECK(norm2(flow_apply(f, x)) < 0.05);
    }
    Vec far{10.0, 10.0};
    Vec y = flow_apply(f, far);
    CHECK(y[0] == far[0]);
    CHECK(y[1] == far[1]);
}

TEST_CASE("chart compression through an affine chart") {
    Mat a(2, 2);
    a.at(0, 0) = 2.0;
    a.at(1, 1) = 1.0;
    ChartPtr chart = make_affine_chart(a, Vec{3.0, 0.0});
    Ball target(Vec{3.0, 0.0}, 0.1);
    FlowMap f = make_chart_compression(chart, 0.5, target);
    for (const Vec& u : ball_samples({0.0, 0.0}, 0.45, 100, 4)) {
        Vec yIn = add(matvec(a, u), Vec{3.0, 0.0});
        Vec out = flow_apply(f, yIn);
        CHECK(dist2(out, target.center) < target.radius);
    }
    Vec far{30.0, -5.0};
    Vec still = flow_apply(f, far);
    CHECK(still[0] == far[0]);
    CHECK(still[1] == far[1]);
}

TEST_CASE("chart compression rejects a target not centered at g(0)") {
    ChartPtr id = make_identity_chart(2);
    CHECK_THROWS_AS(make_chart_compression(id, 0.5, Ball(Vec{1.0, 0.0}, 0.1)),
                    std::invalid_argument);
}

TEST_CASE("affine chart inverse honors the unit-ball domain") {
    Mat a(2, 2);
    a.at(0, 0) = 2.0;
    a.at(1, 1) = 1.0;
    ChartPtr chart = make_affine_chart(a, Vec{3.0, 0.0});
    Vec u{0.3, 0.2};
    Vec y = chart->forward(u);
    auto back = chart->inverse(y);
    REQUIRE(back.has_value());
    CHECK(dist2(*back, u) <= 1e-12);
    CHECK_FALSE(chart->inverse(Vec{3.0 + 2.0 * 1.5, 0.0}).has_value());  // ||u|| = 1.5

    Mat sing(2, 2);
    sing.at(0, 0) = 1.0;  // second row zero
    CHECK_THROWS_AS(make_affine_chart(sing, Vec{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("chart descriptors round-trip") {
    Mat a(2, 2);
    a.at(0, 0) = 2.0;
    a.at(0, 1) = 0.5;
    a.at(1, 1) = 1.0;
    ChartPtr chart = make_affine_chart(a, Vec{3.0, -1.0});
    ChartPtr again = chart_from_descriptor(chart->descriptor());
    CHECK(chart->descriptor().dump() == again->descriptor().dump());
    Vec u{0.1, -0.2};
    CHECK(dist2(chart->forward(u), again->forward(u)) == 0.0);

    ChartPtr id = make_identity_chart(3);
    CHECK(chart_from_descriptor(id->descriptor())->dim() == 3);
}

TEST_CASE("pipelines compose, invert, and serialize bit-exactly") {
    FlowMap comp = make_compression(Vec{0.0, 0.0}, 1.0, 0.2, 1.5);
    FlowMap trans = make_translation(Vec{0.0, 0.0}, 0.5, Vec{0.1, 0.0}, Vec{-0.1, 0.1});
    DiffeoPipeline p = make_pipeline({comp, trans}, 2);

    std::vector<Vec> xs = ball_samples({0.0, 0.0}, 2.0, 60, 17);
    for (const Vec& x : xs) {
        Vec manual = flow_apply(trans, flow_apply(comp, x));
        Vec viaPipe = pipeline_apply_point(p, x);
        CHECK(dist2(manual, viaPipe) == 0.0);
        CHECK(dist2(pipeline_invert_point(p, viaPipe), x) <= 1e-5);
    }

    nlohmann::json j = pipeline_to_json(p);
    DiffeoPipeline q = pipeline_from_json(j);
    CHECK(pipeline_to_json(q).dump() == j.dump());
    for (const Vec& x : xs) {
        Vec a = pipeline_apply_point(p, x);
        Vec b = pipeline_apply_point(q, x);
        CHECK(a[0] == b[0]);
        CHECK(a[1] == b[1]);
    }
}

TEST_CASE("pipeline_compose concatenates and guards dimensions") {
    FlowMap f = make_compression(Vec{0.0, 0.0}, 1.0, 0.2, 1.5);
    DiffeoPipeline a = make_pipeline({f}, 2);
    DiffeoPipeline b = make_pipeline({f, f}, 2);
    CHECK(pipeline_compose(a, b).stages.size() == 3);

    FlowMap g3 = make_compression(Vec{0.0, 0.0, 0.0}, 1.0, 0.2, 1.5);
    CHECK_THROWS_AS(make_pipeline({f, g3}, 2), std::invalid_argument);
    CHECK_THROWS_AS(pipeline_compose(a, make_pipeline({g3}, 3)), std::invalid_argument);
}

TEST_CASE("pipeline_apply preserves the cloud guard") {
    FlowMap trans = make_translation(Vec{0.0, 0.0}, 1.0, Vec{0.2, 0.0}, Vec{-0.2, 0.0});
    DiffeoPipeline p = make_pipeline({trans}, 2);
    PointCloud c({{0.2, 0.0}, {0.21, 0.01}}, 0.03);
    CHECK(pipeline_apply(p, c).guard == 0.03);
    CHECK(pipeline_invert(p, pipeline_apply(p, c)).guard == 0.03);
}

TEST_CASE("jacobian determinant is positive and matches plateau scaling") {
    FlowMap comp = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    DiffeoPipeline p = make_pipeline({comp}, 2);
    Mat j = jacobian_fd(p, {0.2, 0.1});
    double t = compression_time(1.0, 0.1);
    double want = std::exp(-2.0 * t);  // det of e^{-t} I in 2-D
    CHECK(lu_det(j) == doctest::Approx(want).epsilon(1e-3));
    CHECK(lu_det(j) > 0.0);

    FlowMap trans = make_translation(Vec{5.0, 5.0}, 1.0, Vec{5.2, 5.0}, Vec{4.8, 5.0});
    Mat jt = jacobian_fd(make_pipeline({trans}, 2), {5.2, 5.0});
    CHECK(lu_det(jt) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pipeline_with_step only refines") {
    FlowMap comp = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    DiffeoPipeline p = make_pipeline({comp}, 2);
    int built = p.stages[0].stepCount;
    DiffeoPipeline fine = pipeline_with_step(p, 0.01);
    CHECK(fine.stages[0].stepCount > built);
    DiffeoPipeline coarse = pipeline_with_step(p, 0.5);
    CHECK(coarse.stages[0].stepCount == built);

    Vec x{0.4, -0.3};
    CHECK(dist2(pipeline_apply_point(p, x), pipeline_apply_point(fine, x)) <= 1e-6);
    CHECK_THROWS_AS(pipeline_with_step(p, 0.0), std::invalid_argument);
}

TEST_CASE("pipeline_support_bound covers every stage support") {
    FlowMap comp = make_compression(Vec{0.0, 0.0}, 1.0, 0.1, 1.5);
    FlowMap trans = make_translation(Vec{6.0, 0.0}, 1.0, Vec{6.2, 0.0}, Vec{5.8, 0.0});
    DiffeoPipeline p = make_pipeline({comp, trans}, 2);
    auto bound = pipeline_support_bound(p);
    REQUIRE(bound.has_value());
    CHECK(dist2(bound->center, {0.0, 0.0}) + 1.5 <= bound->radius + 1e-12);
    CHECK(dist2(bound->center, {6.0, 0.0}) + 1.0 <= bound->radius + 1e-9);
    CHECK_FALSE(pipeline_support_bound(make_pipeline({}, 2)).has_value());
}
