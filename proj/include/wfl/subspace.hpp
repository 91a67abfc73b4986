#pragma once

#include <vector>

#include "wfl/linalg.hpp"

namespace wfl {

/// Linear subspace of R^n given by an orthonormal basis (k row vectors).
struct Subspace {
    int ambient = 0;
    std::vector<Vec> basis;

    int dim() const { return int(basis.size()); }

    /// Span of the given coordinate axes.
    static Subspace coordinate(int n, const std::vector<int>& axes);

    /// Orthogonal complement of the span of v (a hyperplane through 0).
    static Subspace hyperplane(const Vec& v);

    /// Span of arbitrary vectors; dependent ones are dropped.
    static Subspace span(int n, const std::vector<Vec>& vectors);

    Subspace complement() const;

    /// Map subspace coordinates to an ambient point.
    Vec to_ambient(const Vec& y) const;

    /// Coordinates of the orthogonal projection of x.
    Vec coords(const Vec& x) const;

    /// Checks pairwise orthonormality to 1e-12.
    void validate() const;
};

}  // namespace wfl
