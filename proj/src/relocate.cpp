#include "untangle/relocate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "untangle/rng.hpp"
#include "untangle/transport.hpp"

namespace untangle {

namespace {

void validate_problem(const RelocationProblem& problem) {
    const std::size_t m = problem.sets.size();
    if (m == 0) throw std::invalid_argument("relocate_disjoint: at least one set required");
    if (problem.targets.size() != m)
        throw std::invalid_argument("relocate_disjoint: one target per set required");
    const std::size_t n = problem.sets.front().source.dim();
    if (n < 2) throw std::invalid_argument("relocate_disjoint: dimension >= 2 required");
    for (const RelocationSet& s : problem.sets) {
        if (s.source.dim() != n || s.cloud.dim() != n)
            throw std::invalid_argument("relocate_disjoint: dimension mismatch");
        if (!ball_contains_cloud(s.source, s.cloud))
            throw std::invalid_argument("relocate_disjoint: cloud not inside its source ball");
    }
    for (const Ball& t : problem.targets)
        if (t.dim() != n) throw std::invalid_argument("relocate_disjoint: target dimension mismatch");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!balls_disjoint(problem.sets[i].source, problem.sets[j].source))
                throw std::invalid_argument("relocate_disjoint: source balls overlap");
            if (!balls_disjoint(problem.targets[i], problem.targets[j]))
                throw std::invalid_argument("relocate_disjoint: target balls overlap");
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!balls_disjoint(problem.targets[i], problem.sets[j].source))
                throw std::invalid_argument("relocate_disjoint: a target overlaps a source ball");
    for (std::size_t i = 0; i < m; ++i)
        if (!(problem.sets[i].cloud.guard < 0.4 * problem.targets[i].radius))
            throw std::invalid_argument(
                "relocate_disjoint: cloud guard too large for its target radius");
}

}  // namespace

RelocationResult relocate_disjoint(const RelocationProblem& problem) {
    validate_problem(problem);
    const std::size_t m = problem.sets.size();
    const std::size_t n = problem.sets.front().source.dim();

    // Plan the transports first: their rigid radii decide how tight the
    // per-set compressions must be.
    std::vector<FlowMap> compressions;
    std::vector<DiffeoPipeline> transports(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Ball& src = problem.sets[i].source;
        const Ball& tgt = problem.targets[i];

        std::vector<Ball> obstacles;
        for (std::size_t j = i + 1; j < m; ++j) obstacles.push_back(problem.sets[j].source);
        for (std::size_t j = 0; j < i; ++j) obstacles.push_back(problem.targets[j]);

        const double delta2 = 0.5 * tgt.radius;
        const double clearance = 0.5 * std::min(delta2, src.radius);
        Path path = [&] {
            if (problem.sets[i].waypoints.empty())
                return plan_path(src.center, tgt.center, obstacles, clearance);
            // Manual detour: trust the caller's waypoints for routing; the
            // transport itself still enforces obstacle clearance.
            std::vector<Vec> wps;
            wps.push_back(src.center);
            for (const Vec& w : problem.sets[i].waypoints) wps.push_back(w);
            wps.push_back(tgt.center);
            return Path(std::move(wps));
        }();
        TransportResult tr = make_transport(src.center, tgt.center, path, obstacles, delta2);
        transports[i] = std::move(tr.pipeline);

        double rEnc = 0.0;
        for (const Vec& p : problem.sets[i].cloud.points)
            rEnc = std::max(rEnc, dist2(p, src.center));
        rEnc += problem.sets[i].cloud.guard;

        const double rBar = 0.5 * std::min(tr.delta1, 0.5 * tgt.radius);
        if (rEnc > rBar) {
            double theta = std::min(1.25 * rEnc, 0.5 * (rEnc + src.radius));
            compressions.push_back(make_compression(src.center, rEnc, rBar, theta));
        }
    }

    DiffeoPipeline pipeline = make_pipeline(std::move(compressions), n);
    for (DiffeoPipeline& t : transports) pipeline = pipeline_compose(pipeline, std::move(t));

    RelocationResult out;
    out.images.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        PointCloud img = pipeline_apply(pipeline, problem.sets[i].cloud);
        if (!ball_contains_cloud(problem.targets[i], img, 0.0))
            throw std::runtime_error("relocate_disjoint: set " + std::to_string(i) +
                                     " was not delivered inside its target");
        out.images.push_back(std::move(img));
    }

    // Far-field identity spot check: probes well away from every support and
    // every scene ball must come back bitwise unchanged.
    {
        std::vector<Vec> centers;
        std::vector<double> radii;
        for (const RelocationSet& s : problem.sets) {
            centers.push_back(s.source.center);
            radii.push_back(s.source.radius);
        }
        for (const Ball& t : problem.targets) {
            centers.push_back(t.center);
            radii.push_back(t.radius);
        }
        if (auto supp = pipeline_support_bound(pipeline)) {
            centers.push_back(supp->center);
            radii.push_back(supp->radius);
        }
        Vec mid(n, 0.0);
        for (const Vec& c : centers) axpy(1.0 / centers.size(), c, mid);
        double sceneR = 0.0;
        for (std::size_t i = 0; i < centers.size(); ++i)
            sceneR = std::max(sceneR, dist2(mid, centers[i]) + radii[i]);
        SplitMix64 rng = stream_rng(0xFA4F1E1DULL, n);
        for (int k = 0; k < 16; ++k) {
            Vec probe = mid;
            axpy(5.0 * sceneR, sample_unit_sphere(rng, n), probe);
            Vec image = pipeline_apply_point(pipeline, probe);
            for (std::size_t c = 0; c < n; ++c)
                if (image[c] != probe[c])
                    throw std::runtime_error("relocate_disjoint: far-field probe moved");
        }
    }

    out.pipeline = std::move(pipeline);
    return out;
}

std::vector<Ball> layout_targets(std::size_t l, const std::vector<Ball>& sources,
                                 double radius) {
    if (l == 0) throw std::invalid_argument("layout_targets: l >= 1 required");
    if (!(radius > 0.0)) throw std::invalid_argument("layout_targets: radius must be > 0");
    if (sources.empty())
        throw std::invalid_argument("layout_targets: sources must be non-empty (fixes dimension)");
    const std::size_t n = sources.front().dim();
    for (const Ball& s : sources)
        if (s.dim() != n) throw std::invalid_argument("layout_targets: mixed dimensions");

    double extent = 0.0;
    for (const Ball& s : sources) extent = std::max(extent, norm2(s.center) + s.radius);

    double x1 = extent + 10.0 * radius;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Ball> balls;
        for (std::size_t j = 0; j < l; ++j) {
            Vec c(n, 0.0);
            c[0] = x1 + 2.5 * radius * static_cast<double>(j);
            balls.emplace_back(std::move(c), radius);
        }
        bool clear = true;
        for (const Ball& b : balls)
            for (const Ball& s : sources)
                if (!balls_disjoint(b, s)) {
                    clear = false;
                    break;
                }
        if (clear) return balls;
        x1 += 5.0 * radius;
    }
    throw std::runtime_error("layout_targets: could not place targets clear of the sources");
}

std::vector<Ball> assign_label_subtargets(const LabeledDataset& d,
                                          const std::vector<Ball>& labelBalls) {
    d.validate();
    std::vector<int> labels;
    std::map<int, std::size_t> labelIndex;
    std::map<int, std::size_t> labelCount;
    for (const LabeledClass& c : d.classes) {
        if (!labelIndex.count(c.label)) {
            labelIndex[c.label] = labels.size();
            labels.push_back(c.label);
        }
        ++labelCount[c.label];
    }
    if (labelBalls.size() != labels.size())
        throw std::invalid_argument(
            "assign_label_subtargets: one ball per distinct label required");

    std::vector<Ball> out;
    std::map<int, std::size_t> seen;
    for (const LabeledClass& c : d.classes) {
        const Ball& ball = labelBalls[labelIndex[c.label]];
        const double k = static_cast<double>(labelCount[c.label]);
        const double i = static_cast<double>(seen[c.label]++);
        Vec center = ball.center;
        center[0] += ball.radius * (-1.0 + (2.0 * i + 1.0) / k);
        out.emplace_back(std::move(center), ball.radius / (2.0 * k));
    }
    return out;
}

LabeledDataset lift_embed(const LabeledDataset& d, const LiftSpec& spec) {
    d.validate();
    if (d.classes.empty()) throw std::invalid_argument("lift_embed: empty dataset");
    if (spec.heights.size() != d.classes.size())
        throw std::invalid_argument("lift_embed: one height per class required");
    const double r = spec.boundR;
    if (!(r > 0.0)) throw std::invalid_argument("lift_embed: boundR must be > 0");
    for (const LabeledClass& c : d.classes)
        for (const Vec& p : c.cloud.points)
            if (!(norm2(p) + c.cloud.guard <= r))
                throw std::invalid_argument("lift_embed: a class sticks out of B(0, boundR)");
    for (std::size_t i = 0; i < spec.heights.size(); ++i)
        for (std::size_t j = i + 1; j < spec.heights.size(); ++j)
            if (!(std::fabs(spec.heights[i] - spec.heights[j]) > 4.0 * r))
                throw std::invalid_argument("lift_embed: height gap must exceed 4*boundR");
    for (std::size_t i = 0; i < d.classes.size(); ++i)
        for (std::size_t j = i + 1; j < d.classes.size(); ++j)
            if (!(dist_set_set(d.classes[i].cloud, d.classes[j].cloud) > 0.0))
                throw std::invalid_argument("lift_embed: classes are not pairwise disjoint");

    const std::size_t n = d.dim();
    LabeledDataset out;
    for (std::size_t j = 0; j < d.classes.size(); ++j) {
        LabeledClass lc;
        lc.label = d.classes[j].label;
        std::vector<Vec> pts;
        pts.reserve(d.classes[j].cloud.points.size());
        for (const Vec& p : d.classes[j].cloud.points) {
            Vec q = p;
            q.push_back(spec.heights[j]);
            pts.push_back(std::move(q));
        }
        lc.cloud = PointCloud(std::move(pts), d.classes[j].cloud.guard);
        Vec c(n + 1, 0.0);
        c[n] = spec.heights[j];
        lc.source = Ball(std::move(c), 2.0 * r);
        out.classes.push_back(std::move(lc));
    }
    return out;
}

PointCloud project_down(const PointCloud& cloud, std::size_t n) {
    if (n == 0) throw std::invalid_argument("project_down: n >= 1 required");
    if (cloud.dim() < n) throw std::invalid_argument("project_down: cloud dimension too small");
    std::vector<Vec> pts;
    pts.reserve(cloud.points.size());
    for (const Vec& p : cloud.points) pts.emplace_back(p.begin(), p.begin() + n);
    return PointCloud(std::move(pts), cloud.guard);
}

LiftRelocateResult lift_relocate_project(const LabeledDataset& d,
                                         const std::vector<Ball>& finalTargets,
                                         double liftGap) {
    d.validate();
    const std::size_t m = d.classes.size();
    if (m == 0) throw std::invalid_argument("lift_relocate_project: empty dataset");
    if (finalTargets.size() != m)
        throw std::invalid_argument("lift_relocate_project: one target per class required");
    const std::size_t n = d.dim();
    for (const Ball& t : finalTargets)
        if (t.dim() != n)
            throw std::invalid_argument("lift_relocate_project: target dimension mismatch");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (!balls_disjoint(finalTargets[i], finalTargets[j]))
                throw std::invalid_argument("lift_relocate_project: targets overlap");

    double r = 0.0;
    for (const LabeledClass& c : d.classes)
        for (const Vec& p : c.cloud.points) r = std::max(r, norm2(p) + c.cloud.guard);
    r = std::max(r, 1e-6);

    double gap = liftGap > 0.0 ? liftGap : 5.0 * r;
    if (!(gap > 4.0 * r))
        throw std::invalid_argument("lift_relocate_project: lift gap must exceed 4*boundR");

    LiftSpec spec;
    spec.boundR = r;
    for (std::size_t j = 0; j < m; ++j) spec.heights.push_back(gap * static_cast<double>(j));

    LabeledDataset lifted = lift_embed(d, spec);

    RelocationProblem problem;
    for (std::size_t j = 0; j < m; ++j)
        problem.sets.push_back({lifted.classes[j].cloud, *lifted.classes[j].source, {}});
    for (std::size_t j = 0; j < m; ++j) {
        Vec c = finalTargets[j].center;
        c.push_back(-3.0 * r);
        problem.targets.emplace_back(std::move(c),
                                     0.8 * std::min(finalTargets[j].radius, r));
    }

    RelocationResult moved = relocate_disjoint(problem);

    LiftRelocateResult out;
    out.pipeline = std::move(moved.pipeline);
    out.spec = std::move(spec);
    for (std::size_t j = 0; j < m; ++j) {
        PointCloud flat = project_down(moved.images[j], n);
        if (!ball_contains_cloud(finalTargets[j], flat, 0.0))
            throw std::runtime_error("lift_relocate_project: projected image missed its target");
        out.images.push_back(std::move(flat));
    }
    return out;
}

}  // namespace untangle
