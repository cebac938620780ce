#pragma once

#include <utility>
#include <vector>

#include "untangle/flows.hpp"
#include "untangle/geometry.hpp"

namespace untangle {

// Piecewise-linear path. Consecutive duplicate waypoints are dropped at
// construction; a single surviving waypoint is the degenerate zero-length path.
struct Path {
    std::vector<Vec> waypoints;

    Path() = default;
    explicit Path(std::vector<Vec> pts);

    std::size_t dim() const { return waypoints.empty() ? 0 : waypoints.front().size(); }
    double length() const;
    // Point at arc-length s, clamped to [0, length()].
    Vec point_at(double s) const;
};

// Same polyline with extra waypoints so consecutive gaps are <= spacing.
Path densify(const Path& path, double spacing);

// Half the distance from the path to the obstacle set, computed on samples
// refined until the sample spacing is <= rho/4. Errors if the path touches
// the obstacles. The ball overload measures exact distance to ball closures.
double safety_radius(const Path& path, const PointCloud& k);
double safety_radius(const Path& path, const std::vector<Ball>& obstacles);

// Chain of balls covering the path, radius rho, centers every 0.9*rho of arc
// length; hop endpoints sit at arc midpoints between consecutive centers.
// If the final remainder exceeds 0.9*rho one extra mid-remainder center is
// inserted so every hop stays within the rigid-plateau budget.
struct TransportPlan {
    std::vector<Ball> balls;
    std::vector<std::pair<Vec, Vec>> hops;  // hops[i] stays inside balls[i]
    double rho = 0.0;
    double delta1 = 0.0;  // rho * 0.05
};

TransportPlan cover_path(const Path& path, double rho);

struct TransportResult {
    double delta1 = 0.0;  // radius of the ball around p that is carried rigidly
    DiffeoPipeline pipeline;
};

// Composition of ball-to-ball translations moving p to q along the path while
// leaving the obstacle set bitwise fixed. delta2 caps the rigid radius.
TransportResult make_transport(const Vec& p, const Vec& q, const Path& path,
                               const PointCloud& k, double delta2);
TransportResult make_transport(const Vec& p, const Vec& q, const Path& path,
                               const std::vector<Ball>& obstacles, double delta2);
TransportResult make_transport(const Vec& p, const Vec& q, const Path& path, double delta2);

// Straight segment if clear, else single-detour polylines through midpoints
// offset by {2,4,8,...}*clearance along 16 directions orthogonal to q - p.
Path plan_path(const Vec& p, const Vec& q, const PointCloud& obstacles, double clearance);
Path plan_path(const Vec& p, const Vec& q, const std::vector<Ball>& obstacles,
               double clearance);
Path plan_path(const Vec& p, const Vec& q, double clearance);

}  // namespace untangle
