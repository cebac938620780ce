#include "untangle/flows.hpp"

#include <cmath>
#include <stdexcept>

#include "untangle/bump.hpp"
#include "untangle/rng.hpp"

namespace untangle {

namespace {

Vec zeros(std::size_t n) { return Vec(n, 0.0); }

double frobenius(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

void check_center(const Vec& c, const char* who) {
    if (c.empty()) throw std::invalid_argument(std::string(who) + ": empty center");
    if (!all_finite(c)) throw std::invalid_argument(std::string(who) + ": non-finite center");
}

// RK4 increment: one step of size h maps x to x + h * phi(x, h).
Vec rk4_phi(const FieldSpec& f, const Vec& x, double h) {
    const std::size_t n = x.size();
    Vec k1 = field_eval(f, x);
    Vec xt = x;
    axpy(h * 0.5, k1, xt);
    Vec k2 = field_eval(f, xt);
    xt = x;
    axpy(h * 0.5, k2, xt);
    Vec k3 = field_eval(f, xt);
    xt = x;
    axpy(h, k3, xt);
    Vec k4 = field_eval(f, xt);
    Vec phi(n);
    for (std::size_t i = 0; i < n; ++i)
        phi[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    return phi;
}

// Conservative bound on sup ||DV||. The smooth-step profile on a window of
// width w has |slope| <= 2.5 / w, so each field's Lipschitz constant follows
// from its window geometry. Chart pushforwards pick up the chart's
// conditioning (our charts are affine, where that bound is exact).
double field_stiffness(const FieldSpec& f) {
    if (const auto* c = std::get_if<CompressionField>(&f)) {
        return 1.0 + 2.5 * c->theta / (c->theta - c->r);
    }
    if (const auto* t = std::get_if<TranslationField>(&f)) {
        double supp = std::sqrt(t->suppSq);
        return norm2(t->displacement) * 2.5 * 2.0 * supp / (t->suppSq - t->deltaSq);
    }
    const auto& ch = std::get<ChartCompressionField>(f);
    double inner = 1.0 + 2.5 * ch.cutoffR / (ch.cutoffR - ch.innerR);
    return ch.chart->conditioning_bound() * inner;
}

// Step size keeping h * ||DV|| <= 0.4, which makes h * Lip(phi) < 1/2: every
// RK4 step is then injective with positive Jacobian determinant, and the
// per-step inverse solve below contracts.
double step_limit(double stiffness) {
    if (!(stiffness > 1e-9)) return kMaxStep;
    return std::min(kMaxStep, 0.4 / stiffness);
}

// Fixed-step RK4. Points where the field vanishes at the start are returned
// bitwise unchanged (all our fields have equilibria exactly there: outside
// the support and at field centers).
Vec integrate_forward(const FieldSpec& f, Vec x, double time, int steps) {
    if (x.size() != field_dim(f))
        throw std::invalid_argument("flow: point dimension mismatch");
    if (time == 0.0 || steps == 0) return x;
    if (norm2sq(field_eval(f, x)) == 0.0) return x;
    const double h = time / static_cast<double>(steps);
    for (int s = 0; s < steps; ++s) {
        axpy(h, rk4_phi(f, x, h), x);
        if (!all_finite(x)) throw std::runtime_error("flow: integration diverged");
    }
    return x;
}

// Solves x + h * phi(x, h) = y for x: reverse-RK4 predictor, then fixed-point
// polish. h * Lip(phi) < 1/2 by construction, so the iteration contracts to
// the unique preimage of the forward step.
Vec invert_step(const FieldSpec& f, const Vec& y, double h) {
    Vec x = y;
    axpy(-h, rk4_phi(f, y, -h), x);
    for (int it = 0; it < 100; ++it) {
        Vec xn = y;
        axpy(-h, rk4_phi(f, x, h), xn);
        double moved = dist2(xn, x);
        x = std::move(xn);
        if (moved <= 1e-15 * (1.0 + norm2(x))) break;
    }
    return x;
}

Vec integrate_inverse(const FieldSpec& f, Vec y, double time, int steps) {
    if (y.size() != field_dim(f))
        throw std::invalid_argument("flow: point dimension mismatch");
    if (time == 0.0 || steps == 0) return y;
    if (norm2sq(field_eval(f, y)) == 0.0) return y;
    const double h = time / static_cast<double>(steps);
    for (int s = 0; s < steps; ++s) {
        y = invert_step(f, y, h);
        if (!all_finite(y)) throw std::runtime_error("flow: inversion diverged");
    }
    return y;
}

}  // namespace

std::size_t field_dim(const FieldSpec& f) {
    return std::visit(
        [](const auto& v) -> std::size_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CompressionField>) return v.center.size();
            if constexpr (std::is_same_v<T, TranslationField>) return v.anchor.size();
            if constexpr (std::is_same_v<T, ChartCompressionField>) return v.chart->dim();
        },
        f);
}

Vec field_eval(const FieldSpec& f, const Vec& x) {
    const std::size_t n = field_dim(f);
    if (x.size() != n) throw std::invalid_argument("field_eval: dimension mismatch");

    if (const auto* c = std::get_if<CompressionField>(&f)) {
        Vec d = sub(x, c->center);
        double s = norm2(d);
        if (s >= c->theta) return zeros(n);
        double e = bump_eval(c->r, c->theta, s);
        if (e == 0.0) return zeros(n);
        return scale(-e, d);
    }
    if (const auto* t = std::get_if<TranslationField>(&f)) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = x[i] - t->anchor[i];
            s2 += d * d;
        }
        if (s2 >= t->suppSq) return zeros(n);
        double e = bump_eval(t->deltaSq, t->suppSq, s2);
        if (e == 0.0) return zeros(n);
        return scale(e, t->displacement);
    }
    const auto& ch = std::get<ChartCompressionField>(f);
    auto uo = ch.chart->inverse(x);
    if (!uo) return zeros(n);
    const Vec& u = *uo;
    double s = norm2(u);
    if (s >= ch.cutoffR) return zeros(n);
    if (dist2(ch.chart->forward(u), x) > 1e-8 * (1.0 + norm2(x)))
        throw std::runtime_error("field_eval: chart inconsistency (g(g^{-1}(y)) != y)");
    double e = bump_eval(ch.innerR, ch.cutoffR, s);
    if (e == 0.0) return zeros(n);
    return matvec(ch.chart->jacobian(u), scale(-e, u));
}

int steps_for_time(double time, double maxStep) {
    if (!(time >= 0.0) || !std::isfinite(time))
        throw std::invalid_argument("steps_for_time: time must be finite and >= 0");
    if (!(maxStep > 0.0)) throw std::invalid_argument("steps_for_time: maxStep must be > 0");
    if (time == 0.0) return 0;
    return static_cast<int>(std::ceil(time / maxStep - 1e-12));
}

double compression_time(double r, double delta, double margin) {
    if (!(r > 0.0)) throw std::invalid_argument("compression_time: r must be > 0");
    if (!(delta > 0.0 && delta < r))
        throw std::invalid_argument("compression_time: 0 < delta < r required");
    if (!(margin >= 0.0)) throw std::invalid_argument("compression_time: margin must be >= 0");
    return std::log(r / delta) + margin;
}

FlowMap make_compression(Vec center, double r, double delta, double theta) {
    check_center(center, "make_compression");
    if (!(delta > 0.0 && delta < r && r < theta))
        throw std::invalid_argument("make_compression: need 0 < delta < r < theta");
    if (!std::isfinite(theta)) throw std::invalid_argument("make_compression: non-finite theta");
    double t = compression_time(r, delta);
    FieldSpec field = CompressionField{std::move(center), r, theta};
    int steps = steps_for_time(t, step_limit(field_stiffness(field)));
    return FlowMap{std::move(field), t, steps};
}

FlowMap make_compression(Vec center, double r, double delta) {
    return make_compression(std::move(center), r, delta, 1.25 * r);
}

FlowMap make_translation(Vec anchor, double r, Vec p, Vec q) {
    check_center(anchor, "make_translation");
    if (!(r > 0.0)) throw std::invalid_argument("make_translation: r must be > 0");
    if (p.size() != anchor.size() || q.size() != anchor.size())
        throw std::invalid_argument("make_translation: dimension mismatch");
    double dp = dist2(p, anchor), dq = dist2(q, anchor);
    if (!(dp < r) || !(dq < r))
        throw std::invalid_argument("make_translation: p and q must lie in the open ball");
    double rho = std::max(dp, dq);
    double delta = 0.5 * (rho + r);        // plateau radius: covers p, q with margin
    double supp = 0.5 * (delta + r);       // support radius: still inside B(anchor, r)
    Vec disp = sub(q, p);
    FieldSpec field = TranslationField{std::move(anchor), delta * delta, supp * supp,
                                       std::move(disp)};
    int steps = steps_for_time(1.0, step_limit(field_stiffness(field)));
    return FlowMap{std::move(field), 1.0, steps};
}

FlowMap make_chart_compression(ChartPtr chart, double innerR, const Ball& targetBall) {
    if (!chart) throw std::invalid_argument("make_chart_compression: null chart");
    if (!(innerR > 0.0 && innerR < 1.0))
        throw std::invalid_argument("make_chart_compression: innerR in (0,1) required");
    const std::size_t n = chart->dim();
    if (targetBall.dim() != n)
        throw std::invalid_argument("make_chart_compression: target dimension mismatch");
    Vec g0 = chart->forward(zeros(n));
    if (dist2(g0, targetBall.center) > 1e-9 * (1.0 + norm2(targetBall.center)))
        throw std::invalid_argument("make_chart_compression: target must be centered at g(0)");

    const double cutoffR = 0.5 * (innerR + 1.0);

    // Tracked verification set: images of in-chart spheres at several radii.
    SplitMix64 rng = stream_rng(0xC0FFEEULL, n);
    std::vector<Vec> tracked;
    for (double frac : {1.0, 0.75, 0.5, 0.25}) {
        for (int i = 0; i < 32; ++i) {
            Vec u = scale(frac * innerR, sample_unit_sphere(rng, n));
            tracked.push_back(chart->forward(u));
        }
    }

    // Initial guess from the linearization at 0; doubling handles the rest.
    double fr = frobenius(chart->jacobian(zeros(n)));
    double pull = std::min(0.5 * innerR, 0.5 * targetBall.radius / std::max(fr, 1e-12));
    pull = std::min(pull, 0.5 * innerR);
    double t = compression_time(innerR, pull);

    ChartCompressionField field{std::move(chart), innerR, cutoffR};
    const double hCap = step_limit(field_stiffness(FieldSpec{field}));
    for (int iter = 0; iter < 64; ++iter) {
        FlowMap f{field, t, steps_for_time(t, hCap)};
        bool ok = true;
        for (const Vec& y : tracked) {
            Vec img = flow_apply(f, y);
            if (!(dist2(img, targetBall.center) < targetBall.radius)) {
                ok = false;
                break;
            }
        }
        if (ok) return f;
        t *= 2.0;
    }
    throw std::runtime_error("make_chart_compression: flow time search did not converge");
}

Vec flow_apply(const FlowMap& f, Vec x) {
    return integrate_forward(f.field, std::move(x), f.time, f.stepCount);
}

Vec flow_invert(const FlowMap& f, Vec y) {
    return integrate_inverse(f.field, std::move(y), f.time, f.stepCount);
}

DiffeoPipeline make_pipeline(std::vector<FlowMap> stages, std::size_t dimension) {
    if (dimension == 0) throw std::invalid_argument("make_pipeline: dimension >= 1 required");
    for (const FlowMap& s : stages)
        if (field_dim(s.field) != dimension)
            throw std::invalid_argument("make_pipeline: stage dimension mismatch");
    return DiffeoPipeline{std::move(stages), dimension};
}

DiffeoPipeline pipeline_compose(const DiffeoPipeline& first, const DiffeoPipeline& second) {
    if (first.dimension != second.dimension)
        throw std::invalid_argument("pipeline_compose: dimension mismatch");
    DiffeoPipeline out = first;
    out.stages.insert(out.stages.end(), second.stages.begin(), second.stages.end());
    return out;
}

Vec pipeline_apply_point(const DiffeoPipeline& p, Vec x) {
    if (x.size() != p.dimension)
        throw std::invalid_argument("pipeline_apply_point: dimension mismatch");
    for (const FlowMap& s : p.stages) x = flow_apply(s, std::move(x));
    return x;
}

Vec pipeline_invert_point(const DiffeoPipeline& p, Vec y) {
    if (y.size() != p.dimension)
        throw std::invalid_argument("pipeline_invert_point: dimension mismatch");
    for (auto it = p.stages.rbegin(); it != p.stages.rend(); ++it)
        y = flow_invert(*it, std::move(y));
    return y;
}

PointCloud pipeline_apply(const DiffeoPipeline& p, const PointCloud& cloud) {
    PointCloud out = cloud;
    for (Vec& pt : out.points) pt = pipeline_apply_point(p, std::move(pt));
    return out;
}

PointCloud pipeline_invert(const DiffeoPipeline& p, const PointCloud& cloud) {
    PointCloud out = cloud;
    for (Vec& pt : out.points) pt = pipeline_invert_point(p, std::move(pt));
    return out;
}

Mat jacobian_fd(const DiffeoPipeline& p, const Vec& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("jacobian_fd: h must be > 0");
    const std::size_t n = p.dimension;
    if (x.size() != n) throw std::invalid_argument("jacobian_fd: dimension mismatch");
    Mat j(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        Vec xp = x, xm = x;
        xp[col] += h;
        xm[col] -= h;
        Vec fp = pipeline_apply_point(p, std::move(xp));
        Vec fm = pipeline_apply_point(p, std::move(xm));
        for (std::size_t row = 0; row < n; ++row)
            j.at(row, col) = (fp[row] - fm[row]) / (2.0 * h);
    }
    return j;
}

std::optional<Ball> pipeline_support_bound(const DiffeoPipeline& p) {
    if (p.stages.empty()) return std::nullopt;
    std::vector<Vec> centers;
    std::vector<double> radii;
    for (const FlowMap& s : p.stages) {
        if (const auto* c = std::get_if<CompressionField>(&s.field)) {
            centers.push_back(c->center);
            radii.push_back(c->theta);
        } else if (const auto* t = std::get_if<TranslationField>(&s.field)) {
            centers.push_back(t->anchor);
            radii.push_back(std::sqrt(t->suppSq));
        } else {
            const auto& ch = std::get<ChartCompressionField>(s.field);
            centers.push_back(zeros(p.dimension));
            radii.push_back(ch.chart->image_radius_bound());
        }
    }
    Vec mid = zeros(p.dimension);
    for (const Vec& c : centers) axpy(1.0 / centers.size(), c, mid);
    double r = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        r = std::max(r, dist2(mid, centers[i]) + radii[i]);
    return Ball(mid, std::max(r, 1e-12));
}

DiffeoPipeline pipeline_with_step(const DiffeoPipeline& p, double maxStep) {
    if (!(maxStep > 0.0))
        throw std::invalid_argument("pipeline_with_step: maxStep must be > 0");
    DiffeoPipeline out = p;
    for (FlowMap& s : out.stages)
        s.stepCount = std::max(s.stepCount, steps_for_time(s.time, maxStep));
    return out;
}

nlohmann::json pipeline_to_json(const DiffeoPipeline& p) {
    nlohmann::json stages = nlohmann::json::array();
    for (const FlowMap& s : p.stages) {
        nlohmann::json j;
        if (const auto* c = std::get_if<CompressionField>(&s.field)) {
            j["kind"] = "compression";
            j["center"] = c->center;
            j["r"] = c->r;
            j["theta"] = c->theta;
        } else if (const auto* t = std::get_if<TranslationField>(&s.field)) {
            j["kind"] = "translation";
            j["anchor"] = t->anchor;
            j["deltaSq"] = t->deltaSq;
            j["suppSq"] = t->suppSq;
            j["displacement"] = t->displacement;
        } else {
            const auto& ch = std::get<ChartCompressionField>(s.field);
            j["kind"] = "chart_compression";
            j["chart"] = ch.chart->descriptor();
            j["innerR"] = ch.innerR;
            j["cutoffR"] = ch.cutoffR;
        }
        j["time"] = s.time;
        j["steps"] = s.stepCount;
        stages.push_back(std::move(j));
    }
    return {{"dimension", p.dimension}, {"stages", std::move(stages)}};
}

DiffeoPipeline pipeline_from_json(const nlohmann::json& j) {
    const std::size_t dim = j.at("dimension").get<std::size_t>();
    std::vector<FlowMap> stages;
    for (const auto& s : j.at("stages")) {
        const std::string kind = s.at("kind").get<std::string>();
        FieldSpec field;
        if (kind == "compression") {
            field = CompressionField{s.at("center").get<Vec>(), s.at("r").get<double>(),
                                     s.at("theta").get<double>()};
        } else if (kind == "translation") {
            field = TranslationField{s.at("anchor").get<Vec>(), s.at("deltaSq").get<double>(),
                                     s.at("suppSq").get<double>(),
                                     s.at("displacement").get<Vec>()};
        } else if (kind == "chart_compression") {
            field = ChartCompressionField{chart_from_descriptor(s.at("chart")),
                                          s.at("innerR").get<double>(),
                                          s.at("cutoffR").get<double>()};
        } else {
            throw std::invalid_argument("pipeline_from_json: unknown stage kind '" + kind + "'");
        }
        stages.push_back(FlowMap{std::move(field), s.at("time").get<double>(),
                                 s.at("steps").get<int>()});
    }
    return make_pipeline(std::move(stages), dim);
}

}  // namespace untangle
