#include "untangle/datasets.hpp"

#include <cmath>
#include <stdexcept>

namespace untangle {

namespace {
constexpr double kTau = 6.283185307179586476925286766559;
}

PointCloud sample_ball_cloud(const Ball& b, std::size_t count, std::uint64_t seed,
                             bool surfaceOnly) {
    if (count == 0) throw std::invalid_argument("sample_ball_cloud: count >= 1 required");
    SplitMix64 rng = stream_rng(seed, 0);
    std::vector<Vec> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vec u = surfaceOnly ? sample_unit_sphere(rng, b.dim()) : sample_unit_ball(rng, b.dim());
        Vec p = b.center;
        axpy(b.radius, u, p);
        pts.push_back(std::move(p));
    }
    return PointCloud(std::move(pts), 0.0);
}

LabeledDataset gen_toy_abc(std::size_t countPerClass, std::uint64_t seed) {
    if (countPerClass == 0) throw std::invalid_argument("gen_toy_abc: count >= 1 required");
    LabeledDataset d;

    auto disk = [&](int label, double cx, double cy, std::uint64_t stream) {
        SplitMix64 rng = stream_rng(seed, stream);
        std::vector<Vec> pts;
        pts.reserve(countPerClass);
        for (std::size_t i = 0; i < countPerClass; ++i) {
            double r = std::sqrt(rng.next_double());  // area-uniform
            double a = kTau * rng.next_double();
            pts.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
        }
        LabeledClass c;
        c.label = label;
        c.cloud = PointCloud(std::move(pts), 0.0);
        c.source = Ball({cx, cy}, 1.1);
        d.classes.push_back(std::move(c));
    };
    disk(0, -1.0, 1.0, 0);
    disk(1, 1.0, -1.0, 1);

    {
        SplitMix64 rng = stream_rng(seed, 2);
        const double r0 = 3.0, r1 = 5.0;
        std::vector<Vec> pts;
        pts.reserve(countPerClass);
        for (std::size_t i = 0; i < countPerClass; ++i) {
            double u = rng.next_double();
            double r = std::sqrt(r0 * r0 + u * (r1 * r1 - r0 * r0));  // area-uniform ring
            double a = kTau * rng.next_double();
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        LabeledClass c;
        c.label = 2;
        c.cloud = PointCloud(std::move(pts), 0.0);
        d.classes.push_back(std::move(c));  // no ball around the ring avoids the disks
    }
    return d;
}

LabeledDataset gen_hopf_link(std::size_t countPerCircle) {
    if (countPerCircle < 3)
        throw std::invalid_argument("gen_hopf_link: at least 3 samples per circle required");
    LabeledDataset d;
    std::vector<Vec> l1, l2;
    l1.reserve(countPerCircle);
    l2.reserve(countPerCircle);
    for (std::size_t i = 0; i < countPerCircle; ++i) {
        double a = kTau * static_cast<double>(i) / static_cast<double>(countPerCircle);
        l1.push_back({-1.0 + 2.0 * std::cos(a), 2.0 * std::sin(a), 0.0});
        l2.push_back({1.0 + 2.0 * std::cos(a), 0.0, 2.0 * std::sin(a)});
    }
    LabeledClass c1;
    c1.label = 0;
    c1.cloud = PointCloud(std::move(l1), 0.0);
    d.classes.push_back(std::move(c1));
    LabeledClass c2;
    c2.label = 1;
    c2.cloud = PointCloud(std::move(l2), 0.0);
    d.classes.push_back(std::move(c2));
    return d;  // linked: no pair of disjoint enclosing balls exists
}

SwissRoll gen_swiss_roll(double t0, double t1, std::size_t sGrid, std::size_t tGrid) {
    if (!(t0 > 0.0 && t0 < t1)) throw std::invalid_argument("gen_swiss_roll: need 0 < t0 < t1");
    if (sGrid < 2 || tGrid < 2)
        throw std::invalid_argument("gen_swiss_roll: grid must be at least 2x2");
    SwissRoll roll;
    roll.t0 = t0;
    roll.t1 = t1;
    std::vector<Vec> pts;
    pts.reserve(sGrid * tGrid);
    for (std::size_t i = 0; i < sGrid; ++i) {
        double s = 12.0 * static_cast<double>(i) / static_cast<double>(sGrid - 1);
        for (std::size_t j = 0; j < tGrid; ++j) {
            double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(tGrid - 1);
            pts.push_back({s, t * std::cos(t) + 15.0, t * std::sin(t) + 15.0});
            roll.params.push_back({s, t});
        }
    }
    roll.cloud = PointCloud(std::move(pts), 0.0);
    return roll;
}

std::array<double, 2> unroll_swiss(const Vec& p) {
    if (p.size() != 3) throw std::invalid_argument("unroll_swiss: 3D point required");
    double y = p[1] - 15.0, z = p[2] - 15.0;
    double t = std::hypot(y, z);
    double ang = std::atan2(z, y);
    double resid = std::remainder(ang - t, kTau);
    if (!(std::fabs(resid) <= 1e-6))
        throw std::runtime_error("unroll_swiss: point is off the surface (angle residual " +
                                 std::to_string(resid) + ")");
    return {p[0], t};
}

double linking_number(const std::vector<Vec>& loop1, const std::vector<Vec>& loop2) {
    if (loop1.size() < 3 || loop2.size() < 3)
        throw std::invalid_argument("linking_number: loops need at least 3 vertices");
    for (const Vec& p : loop1)
        if (p.size() != 3) throw std::invalid_argument("linking_number: 3D loops required");
    for (const Vec& p : loop2)
        if (p.size() != 3) throw std::invalid_argument("linking_number: 3D loops required");

    double acc = 0.0;
    const std::size_t na = loop1.size(), nb = loop2.size();
    for (std::size_t i = 0; i < na; ++i) {
        const Vec& a0 = loop1[i];
        const Vec& a1 = loop1[(i + 1) % na];
        Vec da = sub(a1, a0);
        Vec ma = a0;
        axpy(0.5, da, ma);
        for (std::size_t j = 0; j < nb; ++j) {
            const Vec& b0 = loop2[j];
            const Vec& b1 = loop2[(j + 1) % nb];
            Vec db = sub(b1, b0);
            Vec mb = b0;
            axpy(0.5, db, mb);
            Vec r = sub(ma, mb);
            double rn = norm2(r);
            if (rn < 1e-12) throw std::runtime_error("linking_number: loops touch");
            double cx = da[1] * db[2] - da[2] * db[1];
            double cy = da[2] * db[0] - da[0] * db[2];
            double cz = da[0] * db[1] - da[1] * db[0];
            acc += (cx * r[0] + cy * r[1] + cz * r[2]) / (rn * rn * rn);
        }
    }
    return acc / (2.0 * kTau);
}

}  // namespace untangle
