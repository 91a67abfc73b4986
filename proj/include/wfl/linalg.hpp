#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "wfl/errors.hpp"

namespace wfl {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec operator*(double c, const Vec& a) {
    Vec r(a);
    for (double& x : r) x *= c;
    return r;
}

inline Vec operator-(const Vec& a) { return -1.0 * a; }

inline void axpy(double c, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline Vec normalized(const Vec& a) {
    double n = norm2(a);
    if (n == 0.0) throw Error("cannot normalize zero vector");
    return (1.0 / n) * a;
}

/// Dense row-major matrix, sized on construction.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Vec mul(const Vec& x) const {
        Vec y(rows, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    Vec mul_transpose(const Vec& x) const {
        Vec y(cols, 0.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) y[j] += (*this)(i, j) * x[i];
        return y;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

/// Solve A x = b by Gaussian elimination with partial pivoting. A is square.
inline Vec solve(Mat A, Vec b) {
    const std::size_t n = A.rows;
    if (A.cols != n || b.size() != n) throw Error("solve: dimension mismatch");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(A(i, k)) > best) { best = std::fabs(A(i, k)); p = i; }
        if (best == 0.0) throw SingularSystem("pivot vanished in solve()");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            A(i, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

inline double det(Mat A) {
    const std::size_t n = A.rows;
    double d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(A(i, k)) > std::fabs(A(p, k))) p = i;
        if (A(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            d = -d;
        }
        d *= A(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = A(i, k) / A(k, k);
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return d;
}

/// Least squares min ||A x - b|| via Householder QR. rows >= cols required.
inline Vec lstsq(Mat A, Vec b) {
    const std::size_t m = A.rows, n = A.cols;
    if (m < n || b.size() != m) throw Error("lstsq: dimension mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k; i < m; ++i) alpha += A(i, k) * A(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) throw SingularSystem("rank deficient matrix in lstsq()");
        if (A(k, k) > 0) alpha = -alpha;
        Vec v(m, 0.0);
        for (std::size_t i = k; i < m; ++i) v[i] = A(i, k);
        v[k] -= alpha;
        double vn2 = dot(v, v);
        if (vn2 == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += v[i] * A(i, j);
            double f = 2.0 * s / vn2;
            for (std::size_t i = k; i < m; ++i) A(i, j) -= f * v[i];
        }
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += v[i] * b[i];
        double f = 2.0 * s / vn2;
        for (std::size_t i = k; i < m; ++i) b[i] -= f * v[i];
    }
    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

/// Gram-Schmidt orthonormalization of the rows of B; drops dependent rows.
inline std::vector<Vec> orthonormalize(const std::vector<Vec>& rows, double tol = 1e-12) {
    std::vector<Vec> basis;
    for (const Vec& r : rows) {
        Vec v = r;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& q : basis) axpy(-dot(v, q), q, v);
        double n = norm2(v);
        if (n > tol) basis.push_back((1.0 / n) * v);
    }
    return basis;
}

/// Lower-triangular L with L L^T = S for symmetric positive definite S.
inline Mat cholesky(const Mat& s) {
    const std::size_t n = s.rows;
    if (s.cols != n) throw Error("cholesky: matrix not square");
    Mat l(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = s(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (sum <= 0.0) throw SingularSystem("matrix not positive definite in cholesky()");
                l(i, i) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    return l;
}

/// Inverse of a lower-triangular matrix by forward substitution.
inline Mat lower_inverse(const Mat& l) {
    const std::size_t n = l.rows;
    Mat inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        inv(c, c) = 1.0 / l(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = c; k < i; ++k) s += l(i, k) * inv(k, c);
            inv(i, c) = -s / l(i, i);
        }
    }
    return inv;
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace wfl
