// Release gate: one pass/fail line per shipping criterion, exit 0 iff all
// pass. Each criterion states its tolerance inline; failures carry enough
// detail to reproduce by hand.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "untangle/datasets.hpp"
#include "untangle/fixtures.hpp"
#include "untangle/flows.hpp"
#include "untangle/geometry.hpp"
#include "untangle/linalg.hpp"
#include "untangle/network.hpp"
#include "untangle/relocate.hpp"
#include "untangle/rng.hpp"
#include "untangle/separability.hpp"
#include "untangle/transport.hpp"

using namespace untangle;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Gate {
    int fails = 0;

    void report(int id, const char* name, bool ok, const std::string& detail) {
        if (!ok) ++fails;
        std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
        std::fflush(stdout);
    }

    int finish() const {
        std::printf("%d of 9 criteria passed\n", 9 - fails);
        return fails > 0 ? 1 : 0;
    }
};

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

bool bitwise_equal(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Vec zeros(std::size_t n) { return Vec(n, 0.0); }

// --- 1: a standard compression takes the unit ball into B(0, 0.1), matches
// the closed-form plateau solution e^{-t} x, and fixes far points bitwise.
void crit_compression(Gate& g) {
    Timer timer;
    bool contained = true, farFixed = true;
    double closedFormErr = 0.0;
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        FlowMap f = make_compression(zeros(n), 1.0, 0.1, 1.5);
        const double decay = std::exp(-f.time);
        PointCloud inside = sample_ball_cloud(Ball(zeros(n), 1.0), 500, 0xAC5E01 + n);
        for (const Vec& x : inside.points) {
            Vec y = flow_apply(f, x);
            if (!(norm2(y) < 0.1)) contained = false;
            closedFormErr = std::max(closedFormErr, dist2(y, scale(decay, x)));
        }
        SplitMix64 rng = stream_rng(0xFA7F1E1D, n);
        for (int i = 0; i < 100; ++i) {
            Vec x = scale(1.6 + 1.4 * rng.next_double(), sample_unit_sphere(rng, n));
            if (!bitwise_equal(flow_apply(f, x), x)) farFixed = false;
        }
    }
    double sec = timer.seconds();
    bool ok = contained && farFixed && closedFormErr <= 1e-6 && sec < 1.0;
    g.report(1, "compression-fidelity", ok,
             fmt("500 pts per dim in B(0,0.1): %s; closed-form err %.2e (<=1e-6); "
                 "far points bitwise: %s; %.2f s (<1)",
                 contained ? "yes" : "NO", closedFormErr, farFixed ? "yes" : "NO", sec));
}

// --- 2: 50 random rigid ball translations deliver p to q within 1e-9 and fix
// exterior points bitwise.
void crit_translation(Gate& g) {
    double worstDelivery = 0.0;
    bool extFixed = true;
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 2 + static_cast<std::size_t>(i % 3);
        SplitMix64 rng = stream_rng(0x7A150000, static_cast<std::uint64_t>(i));
        Vec anchor = scale(10.0, sample_unit_ball(rng, n));
        double r = 0.5 + 2.0 * rng.next_double();
        Vec p = anchor, q = anchor;
        axpy(0.9 * r, sample_unit_ball(rng, n), p);
        axpy(0.9 * r, sample_unit_ball(rng, n), q);
        FlowMap h = make_translation(anchor, r, p, q);
        worstDelivery = std::max(worstDelivery, dist2(flow_apply(h, p), q));
        for (int j = 0; j < 4; ++j) {
            Vec x = anchor;
            axpy(r * (1.0 + rng.next_double()), sample_unit_sphere(rng, n), x);
            if (!bitwise_equal(flow_apply(h, x), x)) extFixed = false;
        }
    }
    bool ok = worstDelivery <= 1e-9 && extFixed;
    g.report(2, "translation-exactness", ok,
             fmt("50 instances, worst |H(p)-q| = %.2e (<=1e-9); exterior bitwise: %s",
                 worstDelivery, extFixed ? "yes" : "NO"));
}

// --- 3: chain-of-balls transport around a unit-disk obstacle delivers the
// rigid ball, acts as a pure translation on it, and never touches the
// obstacle samples.
void crit_transport(Gate& g) {
    Timer timer;
    PointCloud k = sample_ball_cloud(Ball(zeros(2), 1.0), 200, 0x0B57AC1E);
    Vec p{2.0, 0.0}, q{-2.0, 0.0};
    std::vector<Vec> wps;
    for (int i = 0; i < 16; ++i) {
        double th = M_PI * i / 15.0;
        wps.push_back(Vec{2.0 * std::cos(th), 2.0 * std::sin(th)});
    }
    wps.front() = p;
    wps.back() = q;
    TransportResult tr = make_transport(p, q, Path(std::move(wps)), k, 0.2);

    int leaks = 0;
    double rigidity = 0.0;
    Vec disp = sub(q, p);
    PointCloud rigid = sample_ball_cloud(Ball(p, tr.delta1), 200, 0x51D5);
    for (const Vec& x : rigid.points) {
        Vec y = pipeline_apply_point(tr.pipeline, x);
        if (!(dist2(y, q) < 0.2)) ++leaks;
        Vec want = x;
        axpy(1.0, disp, want);
        rigidity = std::max(rigidity, dist2(y, want));
    }
    bool obstacleFixed = true;
    for (const Vec& x : k.points)
        if (!bitwise_equal(pipeline_apply_point(tr.pipeline, x), x)) obstacleFixed = false;

    double sec = timer.seconds();
    bool ok = leaks == 0 && obstacleFixed && rigidity <= 1e-5 && sec < 5.0;
    g.report(3, "transport-contract", ok,
             fmt("delta1=%.3f; leaks into B(q,0.2): %d; obstacle bitwise: %s; "
                 "rigidity err %.2e (<=1e-5); %.2f s (<5)",
                 tr.delta1, leaks, obstacleFixed ? "yes" : "NO", rigidity, sec));
}

// --- 4 helper: run one relocation scenario and collect its sub-checks.
struct RelocationChecks {
    bool contained = true;
    bool farFixed = true;
    bool detPositive = true;
    double roundtrip = 0.0;
    std::size_t stages = 0;
};

RelocationChecks run_relocation(const RelocationProblem& prob, std::uint64_t seed) {
    RelocationChecks c;
    RelocationResult res = relocate_disjoint(prob);
    c.stages = res.pipeline.stages.size();
    for (std::size_t i = 0; i < prob.targets.size(); ++i)
        if (!ball_contains_cloud(prob.targets[i], res.images[i], 0.0)) c.contained = false;

    double sceneR = 0.0;
    for (const RelocationSet& s : prob.sets)
        sceneR = std::max(sceneR, norm2(s.source.center) + s.source.radius);
    for (const Ball& t : prob.targets) sceneR = std::max(sceneR, norm2(t.center) + t.radius);
    const std::size_t n = prob.targets.front().dim();

    SplitMix64 rng = stream_rng(seed, 0);
    for (int i = 0; i < 100; ++i) {
        Vec x = scale(5.0 * sceneR, sample_unit_sphere(rng, n));
        if (!bitwise_equal(pipeline_apply_point(res.pipeline, x), x)) c.farFixed = false;
    }
    for (int i = 0; i < 500; ++i) {
        Vec x = scale(1.2 * sceneR, sample_unit_ball(rng, n));
        Vec back = pipeline_invert_point(res.pipeline, pipeline_apply_point(res.pipeline, x));
        c.roundtrip = std::max(c.roundtrip, dist2(back, x));
    }
    for (const FlowMap& s : res.pipeline.stages) {
        DiffeoPipeline single = make_pipeline({s}, n);
        Ball support = [&] {
            if (const auto* comp = std::get_if<CompressionField>(&s.field))
                return Ball(comp->center, comp->theta);
            const auto& t = std::get<TranslationField>(s.field);
            return Ball(t.anchor, std::sqrt(t.suppSq));
        }();
        for (int i = 0; i < 50; ++i) {
            Vec x = support.center;
            axpy(support.radius, sample_unit_ball(rng, n), x);
            if (!(lu_det(jacobian_fd(single, x)) > 0.0)) c.detPositive = false;
        }
    }
    return c;
}

void crit_relocation(Gate& g) {
    PointCloud cloudA = sample_ball_cloud(Ball(Vec{-3.0, 0.0}, 0.9), 200, 0xD15C0001);
    PointCloud cloudB = sample_ball_cloud(Ball(Vec{3.0, 0.0}, 0.9), 200, 0xD15C0002);
    RelocationProblem swap2{{{cloudA, Ball(Vec{-3.0, 0.0}, 1.0)},
                            {cloudB, Ball(Vec{3.0, 0.0}, 1.0)}},
                           {Ball(Vec{0.0, 6.0}, 1.0), Ball(Vec{0.0, -6.0}, 1.0)}};
    RelocationChecks c2 = run_relocation(swap2, 0x2D51);

    // Final images of the first set must stay clear of the second source ball.
    RelocationResult res2 = relocate_disjoint(swap2);
    bool avoids = true;
    for (const Vec& y : res2.images[0].points)
        if (dist2(y, Vec{3.0, 0.0}) <= 1.0) avoids = false;

    RelocationProblem three3{
        {{sample_ball_cloud(Ball(Vec{-4.0, 0.0, 0.0}, 0.85), 150, 0xD15C0003),
          Ball(Vec{-4.0, 0.0, 0.0}, 1.0)},
         {sample_ball_cloud(Ball(Vec{4.0, 0.0, 0.0}, 0.85), 150, 0xD15C0004),
          Ball(Vec{4.0, 0.0, 0.0}, 1.0)},
         {sample_ball_cloud(Ball(Vec{0.0, 4.0, 0.0}, 0.85), 150, 0xD15C0005),
          Ball(Vec{0.0, 4.0, 0.0}, 1.0)}},
        {Ball(Vec{0.0, 0.0, 8.0}, 1.0), Ball(Vec{0.0, 0.0, -8.0}, 1.0),
         Ball(Vec{0.0, 8.0, 8.0}, 1.0)}};
    RelocationChecks c3 = run_relocation(three3, 0x3D51);

    double roundtrip = std::max(c2.roundtrip, c3.roundtrip);
    bool ok = c2.contained && c3.contained && avoids && c2.farFixed && c3.farFixed &&
              roundtrip <= 1e-5 && c2.detPositive && c3.detPositive;
    g.report(4, "relocation-end-to-end", ok,
             fmt("2D swap (%zu stages) + 3D m=3 (%zu stages); contained: %s/%s; "
                 "first image clear of second source: %s; far bitwise: %s/%s; "
                 "roundtrip %.2e (<=1e-5) on 1000 probes; det J > 0 at 50 pts/stage: %s/%s",
                 c2.stages, c3.stages, c2.contained ? "yes" : "NO",
                 c3.contained ? "yes" : "NO", avoids ? "yes" : "NO",
                 c2.farFixed ? "yes" : "NO", c3.farFixed ? "yes" : "NO", roundtrip,
                 c2.detPositive ? "yes" : "NO", c3.detPositive ? "yes" : "NO"));
}

std::string pair_summary(const SeparabilityCertificate& cert) {
    std::string s;
    for (const PairCertificate& p : cert.pairs) {
        if (!s.empty()) s += ", ";
        s += fmt("%d|%d %s", p.labelA, p.labelB,
                 p.separable ? fmt("margin %.3g", p.margin).c_str() : "inseparable");
    }
    return s;
}

// --- 5: the embedded planar network must untangle the two-disks-in-a-ring
// dataset: raw classes fail certification, images certify pairwise.
void crit_planar_net(Gate& g) {
    Timer timer;
    LabeledDataset d = gen_toy_abc(200, 7);
    bool rawFails = !certify_pairwise(d).allSeparable;

    Network net = toy_network();
    LabeledDataset images;
    for (const LabeledClass& c : d.classes)
        images.classes.push_back({c.label, network_eval(net, c.cloud), std::nullopt});
    SeparabilityCertificate cert = certify_pairwise(images);

    double sec = timer.seconds();
    bool ok = rawFails && cert.allSeparable && sec < 1.0;
    g.report(5, "planar-net-reproduction", ok,
             fmt("raw classes fail certification: %s; image pairs: %s; %.2f s (<1)",
                 rawFails ? "yes" : "NO", pair_summary(cert).c_str(), sec));
}

// --- 6: the embedded 3D network separates the linked circles, and the
// constructive lift/relocate/project route delivers them into the prescribed
// balls; the inputs really are linked (linking number +-1).
void crit_link_net(Gate& g) {
    Timer timer;
    LabeledDataset d = gen_hopf_link(256);

    Network net = hopf_network();
    LabeledDataset images;
    for (const LabeledClass& c : d.classes)
        images.classes.push_back({c.label, network_eval(net, c.cloud), std::nullopt});
    SeparabilityCertificate cert = certify_pairwise(images);
    double margin = cert.pairs.empty() ? 0.0 : cert.pairs.front().margin;

    std::vector<Ball> targets{Ball(Vec{20.0, 0.0, 0.0}, 2.0), Ball(Vec{-20.0, 0.0, 0.0}, 2.0)};
    LiftRelocateResult lifted = lift_relocate_project(d, targets);
    bool delivered = true;
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (!ball_contains_cloud(targets[i], lifted.images[i], 0.0)) delivered = false;

    double lk = linking_number(d.classes[0].cloud.points, d.classes[1].cloud.points);
    bool linked = std::fabs(std::fabs(lk) - 1.0) <= 0.05;

    double sec = timer.seconds();
    bool ok = cert.allSeparable && margin > 0.0 && delivered && linked && sec < 10.0;
    g.report(6, "link-net-reproduction", ok,
             fmt("image margin %.3g (>0): %s; constructive delivery into "
                 "B((+-20,0,0),2): %s; linking number %.4f (~+-1); %.2f s (<10)",
                 margin, cert.allSeparable ? "yes" : "NO", delivered ? "yes" : "NO", lk,
                 sec));
}

// --- 7: surface roll/unroll round-trips the 40x40 parameter grid to 1e-9.
void crit_swiss(Gate& g) {
    SwissRoll roll = gen_swiss_roll(8.0, 21.0, 40, 40);
    double worst = 0.0;
    for (std::size_t i = 0; i < roll.cloud.size(); ++i) {
        auto [s, t] = unroll_swiss(roll.cloud.points[i]);
        worst = std::max({worst, std::fabs(s - roll.params[i][0]),
                          std::fabs(t - roll.params[i][1])});
    }
    bool ok = worst <= 1e-9;
    g.report(7, "swiss-roll-roundtrip", ok,
             fmt("40x40 grid, worst parameter error %.2e (<=1e-9)", worst));
}

// --- 8: the separability solver agrees with an independent min-norm-point
// oracle on 200 planted instances, and every certificate re-verifies.
void crit_solver(Gate& g) {
    SplitMix64 rng = stream_rng(0xACCE55, 0);
    int disagreements = 0, badCertificates = 0;
    for (int i = 0; i < 200; ++i) {
        std::size_t dim = 2 + static_cast<std::size_t>(i % 3);
        bool planted = (i % 2) == 0;
        testing::PlantedInstance inst = testing::plant_instance(dim, planted, rng);

        bool meet = hulls_intersect(inst.a, inst.b);
        bool oracleMeet = testing::hulls_intersect_oracle(inst.a, inst.b);
        auto sep = separate_pair(inst.a, inst.b);
        if (meet != inst.intersecting || oracleMeet != inst.intersecting ||
            sep.has_value() != !inst.intersecting)
            ++disagreements;

        if (sep) {
            bool good = margin_of(*sep, inst.a, inst.b) > 0.0;
            for (const Vec& x : inst.a.points)
                if (!(dot(sep->normal, x) - sep->offset > 0.0)) good = false;
            for (const Vec& x : inst.b.points)
                if (!(dot(sep->normal, x) - sep->offset < 0.0)) good = false;
            if (!good) ++badCertificates;
        }
    }
    bool ok = disagreements == 0 && badCertificates == 0;
    g.report(8, "separability-solver", ok,
             fmt("200 planted instances: %d oracle disagreements, %d certificates "
                 "failing point-by-point re-verification",
                 disagreements, badCertificates));
}

// --- 9: embedded-network outputs are frozen; any drift beyond 1e-12 (compiler,
// flags, refactor) trips this.
void crit_fixtures(Gate& g) {
    static const double toyIn[8][2] = {{-1.0, 1.0}, {1.0, -1.0}, {4.0, 0.0},  {0.0, 4.0},
                                       {-4.0, 0.0}, {0.0, -4.0}, {0.5, 0.25}, {-2.0, -3.0}};
    static const double toyOut[8][2] = {
        {3.2105311137001142, 11.380787202796316},
        {1.99987894688863, -0.11814997872027921},
        {5.2378149707981976, 19.48537734961009},
        {7.608488145659221, 19.197582559185363},
        {4.4713746435703481, 26.167611758235189},
        {1.9994391511854341, -0.11793175825591751},
        {2.7552573804534761, -0.20997892134965335},
        {3.2352666851742491, 13.024857060425655}};
    static const double hopfIn[8][3] = {{1.0, 0.0, 0.0},   {-3.0, 0.0, 0.0},
                                        {-1.0, 2.0, 0.0},  {-1.0, -2.0, 0.0},
                                        {3.0, 0.0, 0.0},   {1.0, 0.0, 2.0},
                                        {1.0, 0.0, -2.0},  {0.1, 0.2, 0.3}};
    static const double hopfOut[8][2] = {
        {-1.9932101609753166, 0.0037129984783097481},
        {-5.9870760847777742, -0.002575260820707137},
        {-3.9994173017643297, 1.9987954417305733},
        {-4.005753065979512, -2.0042397218697996},
        {6.005119511361789, 0.0016727959079759769},
        {4.0034599324016789, 1.9932697569953457},
        {3.9954001607366014, -1.9878985469149915},
        {1.2939334648913512, 0.39574940848773121}};

    Network toy = toy_network();
    Network hopf = hopf_network();
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        Vec out = network_eval(toy, Vec{toyIn[i][0], toyIn[i][1]});
        worst = std::max({worst, std::fabs(out[0] - toyOut[i][0]),
                          std::fabs(out[1] - toyOut[i][1])});
    }
    for (int i = 0; i < 8; ++i) {
        Vec out = network_eval(hopf, Vec{hopfIn[i][0], hopfIn[i][1], hopfIn[i][2]});
        worst = std::max({worst, std::fabs(out[0] - hopfOut[i][0]),
                          std::fabs(out[1] - hopfOut[i][1])});
    }
    bool ok = worst <= 1e-12;
    g.report(9, "fixture-stability", ok,
             fmt("16 pinned inputs, worst snapshot deviation %.2e (<=1e-12)", worst));
}

}  // namespace

int main() {
    Gate g;
    crit_compression(g);
    crit_translation(g);
    crit_transport(g);
    crit_relocation(g);
    crit_planar_net(g);
    crit_link_net(g);
    crit_swiss(g);
    crit_solver(g);
    crit_fixtures(g);
    return g.finish();
}
