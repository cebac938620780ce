#include "untangle/transport.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace untangle {

namespace {

// Minimum distance from a sample list to the obstacle set (already guard- or
// radius-corrected, i.e. a lower bound on true set distance).
using DistFn = std::function<double(const std::vector<Vec>&)>;

DistFn cloud_dist(const PointCloud& k) {
    if (k.points.empty()) throw std::invalid_argument("transport: empty obstacle cloud");
    return [&k](const std::vector<Vec>& pts) {
        return dist_set_set(PointCloud(pts, 0.0), k);
    };
}

DistFn ball_dist(const std::vector<Ball>& obstacles) {
    if (obstacles.empty()) throw std::invalid_argument("transport: empty obstacle list");
    return [&obstacles](const std::vector<Vec>& pts) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& p : pts)
            for (const Ball& b : obstacles) best = std::min(best, dist2(p, b.center) - b.radius);
        return best;
    };
}

bool same_point(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool path_clear(const Path& path, const DistFn& dist, double clearance) {
    Path dense = densify(path, 0.5 * clearance);
    return dist(dense.waypoints) > clearance;
}

double safety_radius_impl(const Path& path, const DistFn& dist) {
    const double len = path.length();
    if (len == 0.0) {
        double rho = 0.5 * dist(path.waypoints);
        if (!(rho > 0.0)) throw std::runtime_error("safety_radius: path touches the obstacle set");
        return rho;
    }
    double spacing = len / 8.0;
    double rho = 0.0;
    for (int iter = 0; iter < 48; ++iter) {
        Path dense = densify(path, spacing);
        rho = 0.5 * dist(dense.waypoints);
        if (!(rho > 0.0)) throw std::runtime_error("safety_radius: path touches the obstacle set");
        if (spacing <= 0.25 * rho) break;
        spacing = 0.25 * rho;
    }
    return rho;
}

// Orthonormal basis of the complement of d (1 vector in R^2, 2 otherwise),
// built from the standard axes least aligned with d.
std::vector<Vec> complement_basis(const Vec& d) {
    const std::size_t n = d.size();
    Vec dh = scale(1.0 / norm2(d), d);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::fabs(dh[a]) < std::fabs(dh[b]); });
    std::vector<Vec> basis;
    for (std::size_t idx : order) {
        if (basis.size() == std::min<std::size_t>(2, n - 1)) break;
        Vec v(n, 0.0);
        v[idx] = 1.0;
        axpy(-dot(v, dh), dh, v);
        for (const Vec& b : basis) axpy(-dot(v, b), b, v);
        double len = norm2(v);
        if (len < 1e-9) continue;
        basis.push_back(scale(1.0 / len, v));
    }
    if (basis.empty()) throw std::runtime_error("complement_basis: degenerate direction");
    return basis;
}

Path plan_path_impl(const Vec& p, const Vec& q, const DistFn* dist, double clearance) {
    const std::size_t n = p.size();
    if (n < 2) throw std::invalid_argument("plan_path: dimension >= 2 required");
    if (q.size() != n) throw std::invalid_argument("plan_path: dimension mismatch");
    if (!(clearance > 0.0)) throw std::invalid_argument("plan_path: clearance must be > 0");
    if (dist) {
        if (!((*dist)({p}) > clearance))
            throw std::invalid_argument("plan_path: p is within clearance of the obstacles");
        if (!((*dist)({q}) > clearance))
            throw std::invalid_argument("plan_path: q is within clearance of the obstacles");
    }

    Path straight(std::vector<Vec>{p, q});
    if (!dist || path_clear(straight, *dist, clearance)) return straight;

    Vec d = sub(q, p);
    if (norm2(d) == 0.0) return straight;  // single point, already clear
    std::vector<Vec> basis = complement_basis(d);
    Vec mid = p;
    axpy(0.5, d, mid);

    for (int m = 1; m <= 16; ++m) {
        double rd = clearance * std::ldexp(1.0, m);  // 2, 4, 8, ... times clearance
        for (int kdir = 0; kdir < 16; ++kdir) {
            Vec u;
            if (basis.size() >= 2) {
                double a = 2.0 * 3.14159265358979323846 * kdir / 16.0;
                u = scale(std::cos(a), basis[0]);
                axpy(std::sin(a), basis[1], u);
            } else {
                u = scale(kdir % 2 == 0 ? 1.0 : -1.0, basis[0]);
            }
            Vec via = mid;
            axpy(rd, u, via);
            Path cand(std::vector<Vec>{p, via, q});
            if (path_clear(cand, *dist, clearance)) return cand;
        }
    }
    throw std::runtime_error("plan_path: no clear single-detour path found");
}

TransportResult make_transport_impl(const Vec& p, const Vec& q, const Path& path,
                                    const DistFn* dist, double delta2) {
    const std::size_t n = p.size();
    if (n < 2) throw std::invalid_argument("make_transport: dimension >= 2 required");
    if (q.size() != n || path.dim() != n)
        throw std::invalid_argument("make_transport: dimension mismatch");
    if (!(delta2 > 0.0)) throw std::invalid_argument("make_transport: delta2 must be > 0");
    if (!same_point(path.waypoints.front(), p) || !same_point(path.waypoints.back(), q))
        throw std::invalid_argument("make_transport: path must run from p to q");

    const double len = path.length();
    // Without the cap an obstacle-free transport would use arbitrarily fat
    // tubes; capping keeps the support near the path for far-field identity.
    double cap = std::max(delta2, 0.1 * len);
    double rho = cap;
    if (dist) rho = std::min(safety_radius_impl(path, *dist), cap);

    TransportPlan plan = cover_path(path, rho);
    std::vector<FlowMap> stages;
    for (std::size_t i = 0; i < plan.hops.size(); ++i) {
        const auto& [a, b] = plan.hops[i];
        if (same_point(a, b)) continue;
        stages.push_back(make_translation(plan.balls[i].center, rho, a, b));
    }

    if (dist) {
        for (const FlowMap& s : stages) {
            const auto& t = std::get<TranslationField>(s.field);
            double margin = (*dist)({t.anchor}) - std::sqrt(t.suppSq);
            if (!(margin >= 0.4 * rho))
                throw std::runtime_error(
                    "make_transport: stage support too close to the obstacle set");
        }
    }

    TransportResult out;
    out.delta1 = std::min(delta2, plan.delta1);
    out.pipeline = make_pipeline(std::move(stages), n);
    return out;
}

}  // namespace

Path::Path(std::vector<Vec> pts) {
    if (pts.empty()) throw std::invalid_argument("Path: at least one waypoint required");
    const std::size_t n = pts.front().size();
    if (n == 0) throw std::invalid_argument("Path: zero-dimensional waypoint");
    for (const Vec& p : pts) {
        if (p.size() != n) throw std::invalid_argument("Path: mixed dimensions");
        if (!all_finite(p)) throw std::invalid_argument("Path: non-finite waypoint");
        if (!waypoints.empty() && same_point(waypoints.back(), p)) continue;
        waypoints.push_back(p);
    }
}

double Path::length() const {
    double s = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) s += dist2(waypoints[i - 1], waypoints[i]);
    return s;
}

Vec Path::point_at(double s) const {
    if (waypoints.empty()) throw std::runtime_error("Path: empty");
    if (s <= 0.0) return waypoints.front();
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        double seg = dist2(waypoints[i - 1], waypoints[i]);
        if (s <= seg) {
            double t = s / seg;
            Vec r = waypoints[i - 1];
            axpy(t, sub(waypoints[i], waypoints[i - 1]), r);
            return r;
        }
        s -= seg;
    }
    return waypoints.back();
}

Path densify(const Path& path, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("densify: spacing must be > 0");
    if (path.waypoints.size() < 2) return path;
    std::vector<Vec> out;
    out.push_back(path.waypoints.front());
    for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
        const Vec& a = path.waypoints[i - 1];
        const Vec& b = path.waypoints[i];
        double seg = dist2(a, b);
        int pieces = std::max(1, static_cast<int>(std::ceil(seg / spacing)));
        for (int k = 1; k <= pieces; ++k) {
            double t = static_cast<double>(k) / pieces;
            Vec pt = a;
            axpy(t, sub(b, a), pt);
            out.push_back(std::move(pt));
        }
    }
    Path r;
    r.waypoints = std::move(out);
    return r;
}

double safety_radius(const Path& path, const PointCloud& k) {
    if (path.dim() != k.dim()) throw std::invalid_argument("safety_radius: dimension mismatch");
    return safety_radius_impl(path, cloud_dist(k));
}

double safety_radius(const Path& path, const std::vector<Ball>& obstacles) {
    return safety_radius_impl(path, ball_dist(obstacles));
}

TransportPlan cover_path(const Path& path, double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("cover_path: rho must be positive and finite");
    TransportPlan plan;
    plan.rho = rho;
    plan.delta1 = 0.05 * rho;

    const double len = path.length();
    if (len == 0.0) {
        plan.balls.emplace_back(path.waypoints.front(), rho);
        return plan;
    }

    std::vector<double> pos{0.0};
    for (;;) {
        double rem = len - pos.back();
        if (rem < rho) break;
        pos.push_back(pos.back() + 0.9 * rho);
    }
    // A remainder above 0.9*rho would push the final hop outside the rigid
    // plateau of its ball; one extra mid-remainder center restores the margin.
    if (len - pos.back() > 0.9 * rho) pos.push_back(pos.back() + 0.5 * (len - pos.back()));

    for (double s : pos) plan.balls.emplace_back(path.point_at(s), rho);

    std::vector<Vec> ends;
    ends.push_back(path.waypoints.front());
    for (std::size_t i = 1; i < pos.size(); ++i)
        ends.push_back(path.point_at(0.5 * (pos[i - 1] + pos[i])));
    ends.push_back(path.waypoints.back());
    for (std::size_t i = 0; i + 1 < ends.size(); ++i)
        plan.hops.emplace_back(ends[i], ends[i + 1]);
    return plan;
}

TransportResult make_transport(const Vec& p, const Vec& q, const Path& path,
                               const PointCloud& k, double delta2) {
    if (path.dim() != k.dim()) throw std::invalid_argument("make_transport: dimension mismatch");
    DistFn d = cloud_dist(k);
    return make_transport_impl(p, q, path, &d, delta2);
}

TransportResult make_transport(const Vec& p, const Vec& q, const Path& path,
                               const std::vector<Ball>& obstacles, double delta2) {
    if (obstacles.empty()) return make_transport_impl(p, q, path, nullptr, delta2);
    DistFn d = ball_dist(obstacles);
    return make_transport_impl(p, q, path, &d, delta2);
}

TransportResult make_transport(const Vec& p, const Vec& q, const Path& path, double delta2) {
    return make_transport_impl(p, q, path, nullptr, delta2);
}

Path plan_path(const Vec& p, const Vec& q, const PointCloud& obstacles, double clearance) {
    DistFn d = cloud_dist(obstacles);
    return plan_path_impl(p, q, &d, clearance);
}

Path plan_path(const Vec& p, const Vec& q, const std::vector<Ball>& obstacles,
               double clearance) {
    if (obstacles.empty()) return plan_path_impl(p, q, nullptr, clearance);
    DistFn d = ball_dist(obstacles);
    return plan_path_impl(p, q, &d, clearance);
}

Path plan_path(const Vec& p, const Vec& q, double clearance) {
    return plan_path_impl(p, q, nullptr, clearance);
}

}  // namespace untangle
