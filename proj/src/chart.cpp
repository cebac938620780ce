#include "untangle/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace untangle {

namespace {

double frobenius(const Mat& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

struct AffineChart final : Chart {
    Mat a;
    Vec b;

    AffineChart(Mat a_, Vec b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a.rows != a.cols || a.rows == 0)
            throw std::invalid_argument("affine chart: square matrix required");
        if (b.size() != a.rows) throw std::invalid_argument("affine chart: offset size mismatch");
        double d = lu_det(a);
        if (!std::isfinite(d) || d == 0.0)
            throw std::invalid_argument("affine chart: singular matrix");
    }

    std::size_t dim() const override { return a.rows; }

    Vec forward(const Vec& u) const override { return add(matvec(a, u), b); }

    std::optional<Vec> inverse(const Vec& y) const override {
        Vec u = lu_solve(a, sub(y, b));
        if (norm2(u) >= 1.0) return std::nullopt;  // outside the chart's domain
        return u;
    }

    Mat jacobian(const Vec&) const override { return a; }

    double image_radius_bound() const override { return frobenius(a) + norm2(b); }

    double conditioning_bound() const override {
        double invSq = 0.0;  // ||A^-1||_F^2 assembled one column at a time
        for (std::size_t j = 0; j < a.cols; ++j) {
            Vec e(a.rows, 0.0);
            e[j] = 1.0;
            Vec col = lu_solve(a, e);
            for (double v : col) invSq += v * v;
        }
        return frobenius(a) * std::sqrt(invSq);
    }

    nlohmann::json descriptor() const override {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < a.rows; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < a.cols; ++j) row.push_back(a.at(i, j));
            rows.push_back(std::move(row));
        }
        return {{"type", "affine"}, {"matrix", rows}, {"offset", b}};
    }
};

struct IdentityChart final : Chart {
    std::size_t n;

    explicit IdentityChart(std::size_t n_) : n(n_) {
        if (n == 0) throw std::invalid_argument("identity chart: dimension >= 1 required");
    }

    std::size_t dim() const override { return n; }
    Vec forward(const Vec& u) const override { return u; }

    std::optional<Vec> inverse(const Vec& y) const override {
        if (norm2(y) >= 1.0) return std::nullopt;
        return y;
    }

    Mat jacobian(const Vec&) const override { return Mat::identity(n); }
    double image_radius_bound() const override { return 1.0; }
    double conditioning_bound() const override { return 1.0; }

    nlohmann::json descriptor() const override {
        return {{"type", "identity"}, {"dim", n}};
    }
};

}  // namespace

ChartPtr make_affine_chart(Mat a, Vec b) {
    return std::make_shared<AffineChart>(std::move(a), std::move(b));
}

ChartPtr make_identity_chart(std::size_t n) { return std::make_shared<IdentityChart>(n); }

ChartPtr chart_from_descriptor(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "identity") return make_identity_chart(j.at("dim").get<std::size_t>());
    if (type == "affine") {
        const auto& rows = j.at("matrix");
        std::size_t r = rows.size();
        if (r == 0) throw std::invalid_argument("chart descriptor: empty matrix");
        std::size_t c = rows.front().size();
        Mat a(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw std::invalid_argument("chart descriptor: ragged matrix");
            for (std::size_t k = 0; k < c; ++k) a.at(i, k) = rows[i][k].get<double>();
        }
        Vec b = j.at("offset").get<Vec>();
        return make_affine_chart(std::move(a), std::move(b));
    }
    throw std::invalid_argument("chart descriptor: unknown type '" + type + "'");
}

}  // namespace untangle
