#include "wfl/subspace.hpp"

#include <cmath>

#include "wfl/errors.hpp"

namespace wfl {

Subspace Subspace::coordinate(int n, const std::vector<int>& axes) {
    Subspace s;
    s.ambient = n;
    for (int a : axes) {
        if (a < 0 || a >= n) throw Error("coordinate axis out of range");
        Vec e(n, 0.0);
        e[a] = 1.0;
        s.basis.push_back(std::move(e));
    }
    return s;
}

Subspace Subspace::hyperplane(const Vec& v) {
    int n = int(v.size());
    Vec u = normalized(v);
    // Householder: columns 2..n of I - 2ww^T are an orthonormal basis of u^perp.
    Vec w = u;
    w[0] += (u[0] >= 0 ? 1.0 : -1.0);
    double wn2 = dot(w, w);
    Subspace s;
    s.ambient = n;
    for (int j = 1; j < n; ++j) {
        Vec e(n, 0.0);
        e[j] = 1.0;
        axpy(-2.0 * w[j] / wn2, w, e);
        s.basis.push_back(std::move(e));
    }
    return s;
}

Subspace Subspace::span(int n, const std::vector<Vec>& vectors) {
    Subspace s;
    s.ambient = n;
    s.basis = orthonormalize(vectors);
    return s;
}

Subspace Subspace::complement() const {
    // Extend the basis with the coordinate axes and keep the new directions.
    std::vector<Vec> all = basis;
    for (int j = 0; j < ambient; ++j) {
        Vec e(ambient, 0.0);
        e[j] = 1.0;
        all.push_back(std::move(e));
    }
    std::vector<Vec> full = orthonormalize(all);
    Subspace c;
    c.ambient = ambient;
    c.basis.assign(full.begin() + dim(), full.end());
    return c;
}

Vec Subspace::to_ambient(const Vec& y) const {
    Vec x(ambient, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) axpy(y[i], basis[i], x);
    return x;
}

Vec Subspace::coords(const Vec& x) const {
    Vec y(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) y[i] = dot(basis[i], x);
    return y;
}

void Subspace::validate() const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            double want = i == j ? 1.0 : 0.0;
            if (std::fabs(dot(basis[i], basis[j]) - want) > 1e-12)
                throw Error("subspace basis not orthonormal");
        }
}

}  // namespace wfl
