#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "untangle/chart.hpp"
#include "untangle/geometry.hpp"
#include "untangle/linalg.hpp"

namespace untangle {

// V(x) = -eta(||x - center||) (x - center), eta == 1 on [0, r], 0 outside theta.
struct CompressionField {
    Vec center;
    double r = 0.0;
    double theta = 0.0;
};

// V(x) = eta(||x - anchor||^2) * displacement; plateau for ||x-anchor||^2 <= deltaSq,
// zero outside suppSq. Squared radii keep the profile smooth at the anchor.
struct TranslationField {
    Vec anchor;
    double deltaSq = 0.0;
    double suppSq = 0.0;
    Vec displacement;
};

// Pushforward of an in-chart compression: V(y) = Dg(u) * (-eta(||u||) u) with
// u = g^{-1}(y); zero wherever y is outside g(B(0, cutoffR)).
struct ChartCompressionField {
    ChartPtr chart;
    double innerR = 0.0;
    double cutoffR = 0.0;
};

using FieldSpec = std::variant<CompressionField, TranslationField, ChartCompressionField>;

std::size_t field_dim(const FieldSpec& f);

// Exact zero vector outside the support; no approximate tails.
Vec field_eval(const FieldSpec& f, const Vec& x);

// Flow of an autonomous field for a fixed time, integrated by fixed-step RK4.
struct FlowMap {
    FieldSpec field;
    double time = 0.0;
    int stepCount = 0;
};

inline constexpr double kMaxStep = 0.05;

int steps_for_time(double time, double maxStep = kMaxStep);

// ln(r/delta) + margin: time for e^{-t} to take radius r below delta, padded.
double compression_time(double r, double delta, double margin = 0.1);

FlowMap make_compression(Vec center, double r, double delta, double theta);
FlowMap make_compression(Vec center, double r, double delta);  // theta = 1.25 r

// Carries every point of B(anchor, (rho+r)/2... see docs) by q - p in unit time;
// p and q must lie in the open ball B(anchor, r).
FlowMap make_translation(Vec anchor, double r, Vec p, Vec q);

// Compresses g(B(0, innerR)) into targetBall; flow time found by doubling
// until a tracked sample set lands inside. targetBall.center must equal g(0).
FlowMap make_chart_compression(ChartPtr chart, double innerR, const Ball& targetBall);

Vec flow_apply(const FlowMap& f, Vec x);
// Exact inverse of the discrete forward map: each RK4 step is inverted by a
// contracting fixed-point solve on the same step grid, so the round trip
// x -> flow_apply -> flow_invert reproduces x to rounding error.
Vec flow_invert(const FlowMap& f, Vec y);

struct DiffeoPipeline {
    std::vector<FlowMap> stages;
    std::size_t dimension = 0;
};

DiffeoPipeline make_pipeline(std::vector<FlowMap> stages, std::size_t dimension);
DiffeoPipeline pipeline_compose(const DiffeoPipeline& first, const DiffeoPipeline& second);

Vec pipeline_apply_point(const DiffeoPipeline& p, Vec x);
Vec pipeline_invert_point(const DiffeoPipeline& p, Vec y);
PointCloud pipeline_apply(const DiffeoPipeline& p, const PointCloud& cloud);
PointCloud pipeline_invert(const DiffeoPipeline& p, const PointCloud& cloud);

// Central-difference Jacobian of the full pipeline map at x.
Mat jacobian_fd(const DiffeoPipeline& p, const Vec& x, double h = 1e-5);

// Enclosing ball of every stage's support; nullopt for an empty pipeline.
std::optional<Ball> pipeline_support_bound(const DiffeoPipeline& p);

// Same map, integrated with step size <= maxStep (never coarser than built).
DiffeoPipeline pipeline_with_step(const DiffeoPipeline& p, double maxStep);

// Round-trips bit-exactly (doubles serialized shortest-round-trip).
nlohmann::json pipeline_to_json(const DiffeoPipeline& p);
DiffeoPipeline pipeline_from_json(const nlohmann::json& j);

}  // namespace untangle
