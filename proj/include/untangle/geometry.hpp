#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "untangle/linalg.hpp"

namespace untangle {

// Closed Euclidean ball. radius > 0.
struct Ball {
    Vec center;
    double radius = 0.0;

    Ball() = default;
    Ball(Vec c, double r);

    std::size_t dim() const { return center.size(); }
};

// Finite sample of a compact set. `guard` is a sampling margin: every point of
// the underlying set is within `guard` of some sample.
struct PointCloud {
    std::vector<Vec> points;
    double guard = 0.0;

    PointCloud() = default;
    PointCloud(std::vector<Vec> pts, double g = 0.0);

    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
    std::size_t size() const { return points.size(); }
};

// One labeled compact set, optionally with a known enclosing ball.
struct LabeledClass {
    int label = 0;
    PointCloud cloud;
    std::optional<Ball> source;
};

struct LabeledDataset {
    std::vector<LabeledClass> classes;

    std::size_t dim() const;
    void validate() const;  // throws on empty clouds / mixed dimensions
};

// Minimum pairwise distance between two sample clouds, minus both guards
// (conservative lower bound on the distance of the underlying sets; may be
// negative). Errors on empty clouds or mixed dimensions.
double dist_set_set(const PointCloud& a, const PointCloud& b);

// True iff every sample sits strictly inside the ball shrunk by the cloud's
// guard and the given slack: ||p - c|| + guard + slack < radius.
bool ball_contains_cloud(const Ball& b, const PointCloud& cloud, double slack = 0.0);

// True iff the closed balls do not meet (tangency counts as meeting).
bool balls_disjoint(const Ball& a, const Ball& b);

}  // namespace untangle
