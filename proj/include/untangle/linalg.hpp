#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace untangle {

using Vec = std::vector<double>;

inline void check_same_dim(const Vec& a, const Vec& b, const char* who) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

inline Vec add(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// r += s*a, in place
inline void axpy(double s, const Vec& a, Vec& r) {
    check_same_dim(a, r, "axpy");
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2sq(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(norm2sq(a)); }

inline double dist2(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dist2");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

// Dense row-major matrix, small sizes only.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline Vec matvec(const Mat& m, const Vec& x) {
    if (m.cols != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    Vec r(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double acc = 0.0;  // fixed left-to-right accumulation
        for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j) * x[j];
        r[i] = acc;
    }
    return r;
}

// Determinant by LU with partial pivoting; square matrices only.
inline double lu_det(Mat m) {
    if (m.rows != m.cols) throw std::invalid_argument("lu_det: square matrix required");
    const std::size_t n = m.rows;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::fabs(m.at(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            det = -det;
        }
        det *= m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m.at(i, k) / m.at(k, k);
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

// Solve m x = rhs by Gaussian elimination with partial pivoting.
inline Vec lu_solve(Mat m, Vec rhs) {
    if (m.rows != m.cols || m.rows != rhs.size())
        throw std::invalid_argument("lu_solve: shape mismatch");
    const std::size_t n = m.rows;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::fabs(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::fabs(m.at(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m.at(i, k) / m.at(k, k);
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
            rhs[i] -= f * rhs[k];
        }
    }
    Vec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = rhs[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= m.at(ii, j) * x[j];
        x[ii] = acc / m.at(ii, ii);
    }
    return x;
}

}  // namespace untangle
