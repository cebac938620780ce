#include "untangle/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace untangle {

namespace {

// Phase-1 simplex, Bland's rule, dense tableau. Minimizes the sum of one
// artificial variable per row; feasibility iff the optimum is ~0.
bool phase1_feasible(std::vector<std::vector<double>> rows, std::vector<double> rhs) {
    const std::size_t m = rows.size();
    const std::size_t nReal = rows.front().size();

    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (double v : rows[i]) s = std::max(s, std::fabs(v));
        s = std::max(s, std::fabs(rhs[i]));
        if (s > 0.0)
            for (double& v : rows[i]) v /= s, rhs[i] /= s;
        else
            rhs[i] = 0.0;
        if (rhs[i] < 0.0) {
            for (double& v : rows[i]) v = -v;
            rhs[i] = -rhs[i];
        }
    }

    const std::size_t nCols = nReal + m;  // artificials appended
    std::vector<std::vector<double>> t(m, std::vector<double>(nCols + 1, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < nReal; ++j) t[i][j] = rows[i][j];
        t[i][nReal + i] = 1.0;
        t[i][nCols] = rhs[i];
        basis[i] = nReal + i;
    }
    // objective row: minimize sum of artificials; reduced costs start as
    // -(column sums) for real columns, 0 for artificials.
    std::vector<double> obj(nCols + 1, 0.0);
    for (std::size_t j = 0; j <= nCols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        obj[j] = (j >= nReal && j < nCols) ? 0.0 : -s;
    }

    const double eps = 1e-11;
    const std::size_t maxPivots = 50 * (nCols + m) + 1000;
    for (std::size_t pivots = 0; pivots < maxPivots; ++pivots) {
        std::size_t enter = nCols;
        for (std::size_t j = 0; j < nCols; ++j)
            if (obj[j] < -eps) {  // Bland: first improving column
                enter = j;
                break;
            }
        if (enter == nCols) break;

        std::size_t leave = m;
        double bestRatio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > eps) {
                double ratio = t[i][nCols] / t[i][enter];
                if (ratio < bestRatio - 1e-15 ||
                    (ratio < bestRatio + 1e-15 && (leave == m || basis[i] < basis[leave]))) {
                    bestRatio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) break;  // unbounded; cannot happen for phase 1

        double piv = t[leave][enter];
        for (std::size_t j = 0; j <= nCols; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= nCols; ++j) t[i][j] -= f * t[leave][j];
        }
        double f = obj[enter];
        if (f != 0.0)
            for (std::size_t j = 0; j <= nCols; ++j) obj[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    double artificialSum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= nReal) artificialSum += t[i][nCols];
    return artificialSum <= 1e-9;
}

std::vector<Vec> dedup_points(const PointCloud& c) {
    std::vector<Vec> pts = c.points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

double margin_of(const Hyperplane& h, const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty())
        throw std::invalid_argument("margin_of: empty cloud");
    if (h.normal.size() != a.dim() || a.dim() != b.dim())
        throw std::invalid_argument("margin_of: dimension mismatch");
    double nlen = norm2(h.normal);
    if (!(nlen > 0.0)) throw std::invalid_argument("margin_of: zero normal");
    double minA = std::numeric_limits<double>::infinity();
    for (const Vec& p : a.points) minA = std::min(minA, (dot(h.normal, p) - h.offset) / nlen);
    double maxB = -std::numeric_limits<double>::infinity();
    for (const Vec& p : b.points) maxB = std::max(maxB, (dot(h.normal, p) - h.offset) / nlen);
    return 0.5 * (minA - maxB);
}

bool hulls_intersect(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty())
        throw std::invalid_argument("hulls_intersect: empty cloud");
    if (a.dim() != b.dim()) throw std::invalid_argument("hulls_intersect: dimension mismatch");
    std::vector<Vec> pa = dedup_points(a), pb = dedup_points(b);
    const std::size_t n = a.dim();
    const std::size_t cols = pa.size() + pb.size();

    // sum lambda_i a_i - sum mu_j b_j = 0, sum lambda = 1, sum mu = 1.
    std::vector<std::vector<double>> rows(n + 2, std::vector<double>(cols, 0.0));
    std::vector<double> rhs(n + 2, 0.0);
    for (std::size_t c = 0; c < pa.size(); ++c) {
        for (std::size_t r = 0; r < n; ++r) rows[r][c] = pa[c][r];
        rows[n][c] = 1.0;
    }
    for (std::size_t c = 0; c < pb.size(); ++c) {
        for (std::size_t r = 0; r < n; ++r) rows[r][pa.size() + c] = -pb[c][r];
        rows[n + 1][pa.size() + c] = 1.0;
    }
    rhs[n] = 1.0;
    rhs[n + 1] = 1.0;
    return phase1_feasible(std::move(rows), std::move(rhs));
}

std::optional<Hyperplane> separate_pair(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty())
        throw std::invalid_argument("separate_pair: empty cloud");
    if (a.dim() != b.dim()) throw std::invalid_argument("separate_pair: dimension mismatch");
    if (hulls_intersect(a, b)) return std::nullopt;

    std::vector<Vec> pa = dedup_points(a), pb = dedup_points(b);
    const std::size_t n = a.dim();
    std::vector<Vec> xs;
    std::vector<double> ys;
    for (Vec& p : pa) xs.push_back(std::move(p)), ys.push_back(1.0);
    for (Vec& p : pb) xs.push_back(std::move(p)), ys.push_back(-1.0);
    const std::size_t total = xs.size();

    // Maximal-violating-pair coordinate ascent on the hard-margin dual
    // (box C only as a numerical cushion).
    const double boxC = 1e12;
    const double tol = 1e-10;
    const int maxIter = 200000;
    std::vector<double> alpha(total, 0.0);
    Vec w(n, 0.0);

    for (int iter = 0; iter < maxIter; ++iter) {
        double up = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        std::size_t iu = total, il = total;
        for (std::size_t i = 0; i < total; ++i) {
            double g = ys[i] * dot(w, xs[i]) - 1.0;  // dual gradient
            double v = -ys[i] * g;
            bool inUp = (ys[i] > 0.0 && alpha[i] < boxC) || (ys[i] < 0.0 && alpha[i] > 0.0);
            bool inLo = (ys[i] < 0.0 && alpha[i] < boxC) || (ys[i] > 0.0 && alpha[i] > 0.0);
            if (inUp && v > up) up = v, iu = i;
            if (inLo && v < lo) lo = v, il = i;
        }
        if (iu == total || il == total || up - lo <= tol) break;

        Vec dx = sub(xs[iu], xs[il]);
        double den = norm2sq(dx);
        if (den <= 1e-15) break;  // identical pair: numerically stuck
        double t = (up - lo) / den;
        t = std::min(t, ys[iu] > 0.0 ? boxC - alpha[iu] : alpha[iu]);
        t = std::min(t, ys[il] > 0.0 ? alpha[il] : boxC - alpha[il]);
        if (!(t > 0.0)) break;
        alpha[iu] += ys[iu] * t;
        alpha[il] -= ys[il] * t;
        axpy(t, dx, w);
    }

    double wlen = norm2(w);
    if (!(wlen > 0.0)) return std::nullopt;
    Hyperplane h;
    h.normal = scale(1.0 / wlen, w);
    double minA = std::numeric_limits<double>::infinity();
    for (const Vec& p : a.points) minA = std::min(minA, dot(h.normal, p));
    double maxB = -std::numeric_limits<double>::infinity();
    for (const Vec& p : b.points) maxB = std::max(maxB, dot(h.normal, p));
    h.offset = 0.5 * (minA + maxB);

    if (!(margin_of(h, a, b) > 1e-9)) return std::nullopt;
    return h;
}

SeparabilityCertificate certify_pairwise(const LabeledDataset& d) {
    d.validate();
    std::map<int, std::vector<Vec>> merged;
    std::map<int, double> guards;
    for (const LabeledClass& c : d.classes) {
        auto& pts = merged[c.label];
        pts.insert(pts.end(), c.cloud.points.begin(), c.cloud.points.end());
        guards[c.label] = std::max(guards[c.label], c.cloud.guard);
    }
    if (merged.size() < 2)
        throw std::invalid_argument("certify_pairwise: at least two distinct labels required");

    SeparabilityCertificate cert;
    cert.allSeparable = true;
    for (auto ia = merged.begin(); ia != merged.end(); ++ia) {
        for (auto ib = std::next(ia); ib != merged.end(); ++ib) {
            PointCloud ca(ia->second, guards[ia->first]);
            PointCloud cb(ib->second, guards[ib->first]);
            PairCertificate pc;
            pc.labelA = ia->first;
            pc.labelB = ib->first;
            auto h = separate_pair(ca, cb);
            pc.separable = h.has_value();
            if (h) {
                pc.plane = *h;
                pc.margin = margin_of(*h, ca, cb);
            } else {
                cert.allSeparable = false;
            }
            cert.pairs.push_back(std::move(pc));
        }
    }
    return cert;
}

nlohmann::json certificate_to_json(const SeparabilityCertificate& c) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairCertificate& p : c.pairs) {
        nlohmann::json j{{"labelA", p.labelA}, {"labelB", p.labelB}, {"separable", p.separable}};
        if (p.separable) {
            j["normal"] = p.plane.normal;
            j["offset"] = p.plane.offset;
            j["margin"] = p.margin;
        }
        pairs.push_back(std::move(j));
    }
    return {{"allSeparable", c.allSeparable}, {"pairs", std::move(pairs)}};
}

}  // namespace untangle
