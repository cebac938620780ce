#include "untangle/geometry.hpp"

#include <limits>
#include <stdexcept>

namespace untangle {

Ball::Ball(Vec c, double r) : center(std::move(c)), radius(r) {
    if (center.empty()) throw std::invalid_argument("Ball: empty center");
    if (!(radius > 0.0)) throw std::invalid_argument("Ball: radius must be positive");
    if (!all_finite(center) || !std::isfinite(radius))
        throw std::invalid_argument("Ball: non-finite data");
}

PointCloud::PointCloud(std::vector<Vec> pts, double g) : points(std::move(pts)), guard(g) {
    if (!(guard >= 0.0)) throw std::invalid_argument("PointCloud: guard must be >= 0");
    if (points.empty()) return;
    const std::size_t n = points.front().size();
    if (n == 0) throw std::invalid_argument("PointCloud: zero-dimensional point");
    for (const Vec& p : points) {
        if (p.size() != n) throw std::invalid_argument("PointCloud: mixed dimensions");
        if (!all_finite(p)) throw std::invalid_argument("PointCloud: non-finite point");
    }
}

std::size_t LabeledDataset::dim() const {
    return classes.empty() ? 0 : classes.front().cloud.dim();
}

void LabeledDataset::validate() const {
    const std::size_t n = dim();
    for (const LabeledClass& c : classes) {
        if (c.cloud.points.empty())
            throw std::invalid_argument("LabeledDataset: empty class cloud");
        if (c.cloud.dim() != n)
            throw std::invalid_argument("LabeledDataset: mixed dimensions across classes");
        if (c.source && c.source->dim() != n)
            throw std::invalid_argument("LabeledDataset: source ball dimension mismatch");
    }
}

double dist_set_set(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty())
        throw std::invalid_argument("dist_set_set: empty cloud");
    if (a.dim() != b.dim()) throw std::invalid_argument("dist_set_set: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& p : a.points)
        for (const Vec& q : b.points) {
            double d = dist2(p, q);
            if (d < best) best = d;
        }
    return best - a.guard - b.guard;
}

bool ball_contains_cloud(const Ball& b, const PointCloud& cloud, double slack) {
    if (cloud.points.empty()) throw std::invalid_argument("ball_contains_cloud: empty cloud");
    if (cloud.dim() != b.dim())
        throw std::invalid_argument("ball_contains_cloud: dimension mismatch");
    for (const Vec& p : cloud.points)
        if (!(dist2(p, b.center) + cloud.guard + slack < b.radius)) return false;
    return true;
}

bool balls_disjoint(const Ball& a, const Ball& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("balls_disjoint: dimension mismatch");
    return dist2(a.center, b.center) > a.radius + b.radius;
}

}  // namespace untangle
