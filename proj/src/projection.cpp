#include <algorithm>
#include <cmath>

#include "wfl/body.hpp"
#include "wfl/errors.hpp"

namespace wfl {

namespace {

bool is_coordinate_subspace(const Subspace& h, std::vector<int>& axes) {
    axes.clear();
    for (const Vec& b : h.basis) {
        int axis = -1;
        for (int i = 0; i < h.ambient; ++i) {
            if (std::fabs(b[i]) > 1e-14) {
                if (axis != -1 || std::fabs(b[i] - 1.0) > 1e-14) return false;
                axis = i;
            }
        }
        if (axis == -1) return false;
        axes.push_back(axis);
    }
    return true;
}

}  // namespace

std::vector<Halfspace> facet_halfspaces(int n, const std::vector<Vec>& vs) {
    std::vector<Halfspace> facets;
    const std::size_t m = vs.size();
    std::vector<std::size_t> sel(n);
    auto consider = [&]() {
        // hyperplane through the selected n vertices
        std::vector<Vec> diffs;
        for (int i = 1; i < n; ++i) diffs.push_back(vs[sel[i]] - vs[sel[0]]);
        std::vector<Vec> basis = orthonormalize(diffs);
        if (int(basis.size()) != n - 1) return;
        std::vector<Vec> all = basis;
        for (int j = 0; j < n; ++j) {
            Vec e(n, 0.0);
            e[j] = 1.0;
            all.push_back(std::move(e));
        }
        std::vector<Vec> full = orthonormalize(all);
        if (int(full.size()) != n) return;
        Vec normal = full[n - 1];
        double off = dot(normal, vs[sel[0]]);
        double lo = 0.0, hi = 0.0;
        for (const Vec& v : vs) {
            double d = dot(normal, v) - off;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        double tol = 1e-9 * (1.0 + std::fabs(off));
        Halfspace h;
        if (hi <= tol)
            h = {normal, off};
        else if (lo >= -tol)
            h = {-normal, -off};
        else
            return;
        for (const Halfspace& f : facets) {
            if (std::fabs(f.offset - h.offset) < 1e-9 * (1.0 + std::fabs(h.offset)) &&
                norm2(f.normal - h.normal) < 1e-9)
                return;
        }
        facets.push_back(std::move(h));
    };
    auto rec = [&](auto&& self, std::size_t start, int depth) -> void {
        if (depth == n) {
            consider();
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            sel[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    if (m >= std::size_t(n) && n >= 2) rec(rec, 0, 0);
    return facets;
}

std::vector<Vec> convex_hull_2d(std::vector<Vec> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec& a, const Vec& b) { return norm2(a - b) < 1e-12; }),
                 points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-14) --k;
        hull[k++] = points[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-14) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

namespace {

// drop constraints whose normal vanishes in the section coordinates; they
// read 0 <= offset and are either vacuous or prove the section empty
std::vector<Halfspace> prune_section_halfspaces(std::vector<Halfspace> hs) {
    std::vector<Halfspace> kept;
    for (Halfspace& h : hs) {
        if (norm2(h.normal) < 1e-12) {
            if (h.offset < -1e-10) throw EmptySection("plane misses the body");
            continue;
        }
        kept.push_back(std::move(h));
    }
    if (kept.empty()) throw UnsupportedSection("section unconstrained in the plane");
    return kept;
}

BodyPtr make_projected(BodyPtr k, Subspace h) {
    auto b = std::make_shared<Body>();
    b->dim = h.dim();
    b->symmetric = k->symmetric;
    b->kind = ProjectedK{std::move(k), std::move(h)};
    return b;
}

}  // namespace

BodyPtr project_body(const Body& k, const Subspace& h) {
    if (h.ambient != k.dim) throw Error("projection subspace ambient mismatch");
    const int m = h.dim();
    if (m < 1 || m > k.dim) throw Error("projection onto trivial subspace");
    if (m == k.dim) {
        // full-dimensional: just a rotation into the subspace coordinates
        Mat b(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) b(i, j) = h.basis[i][j];
        return linear_image(std::make_shared<Body>(k), b);
    }
    if (const auto* ball_k = std::get_if<BallK>(&k.kind)) return ball(m, ball_k->radius);
    std::vector<int> axes;
    if (const auto* box_k = std::get_if<BoxK>(&k.kind)) {
        if (is_coordinate_subspace(h, axes)) {
            Vec lo(m), hi(m);
            for (int i = 0; i < m; ++i) {
                lo[i] = box_k->lo[axes[i]];
                hi[i] = box_k->hi[axes[i]];
            }
            return box(std::move(lo), std::move(hi));
        }
    }
    if (const auto* e = std::get_if<EllipsoidK>(&k.kind)) {
        // shadow of {D u : |u| <= 1} is the ellipsoid with shape (B D)(B D)^T
        Mat s(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double v = 0.0;
                for (int l = 0; l < k.dim; ++l)
                    v += h.basis[i][l] * e->semi_axes[l] * e->semi_axes[l] * h.basis[j][l];
                s(i, j) = v;
            }
        return linear_image(ball(m, 1.0), cholesky(s));
    }
    if (auto vs = vertices_of(k)) {
        std::vector<Vec> shadow;
        shadow.reserve(vs->size());
        for (const Vec& v : *vs) shadow.push_back(h.coords(v));
        return polytope_v(std::move(shadow));
    }
    if (const auto* sum = std::get_if<MinkowskiSumK>(&k.kind))
        return minkowski_sum(project_body(*sum->a, h), project_body(*sum->b, h));
    if (const auto* s = std::get_if<ScaleK>(&k.kind)) return scale(project_body(*s->body, h), s->factor);
    if (const auto* n = std::get_if<NegateK>(&k.kind)) return negate(project_body(*n->body, h));
    if (const auto* t = std::get_if<TranslateK>(&k.kind))
        return translate(project_body(*t->body, h), h.coords(t->shift));
    return make_projected(std::make_shared<Body>(k), h);
}

BodyPtr section_body(const Body& k, const Subspace& h) {
    return section_body(k, h, Vec(k.dim, 0.0));
}

BodyPtr section_body(const Body& k, const Subspace& h, const Vec& offset) {
    if (h.ambient != k.dim) throw Error("section subspace ambient mismatch");
    const int n = k.dim;
    const int m = h.dim();
    if (m < 1 || m >= n) throw UnsupportedSection("section needs 1 <= dim H < n");

    if (const auto* b = std::get_if<BallK>(&k.kind)) {
        Vec c_h = h.coords(offset);
        Vec c_perp = offset - h.to_ambient(c_h);
        double r2 = b->radius * b->radius - dot(c_perp, c_perp);
        if (r2 < -1e-12) throw EmptySection("plane misses the ball");
        return translate(ball(m, std::sqrt(std::max(0.0, r2))), -c_h);
    }
    if (const auto* box_k = std::get_if<BoxK>(&k.kind)) {
        // lo <= B y + c <= hi, written as 2n halfspaces in the section coords
        std::vector<Halfspace> hs;
        for (int i = 0; i < n; ++i) {
            Vec normal(m);
            for (int j = 0; j < m; ++j) normal[j] = h.basis[j][i];
            hs.push_back({normal, box_k->hi[i] - offset[i]});
            hs.push_back({-normal, offset[i] - box_k->lo[i]});
        }
        try {
            return polytope_h(m, prune_section_halfspaces(std::move(hs)));
        } catch (const InvalidBody&) {
            throw EmptySection("plane misses the box");
        }
    }
    if (const auto* e = std::get_if<EllipsoidK>(&k.kind)) {
        // |M y + d|^2 <= 1 with M = D^{-1} B^T, d = D^{-1} c
        Mat mt(n, m);
        Vec d(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) mt(i, j) = h.basis[j][i] / e->semi_axes[i];
            d[i] = offset[i] / e->semi_axes[i];
        }
        Mat s(m, m);
        Vec rhs(m, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double v = 0.0;
                for (int l = 0; l < n; ++l) v += mt(l, i) * mt(l, j);
                s(i, j) = v;
            }
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < n; ++l) rhs[i] -= mt(l, i) * d[l];
        Vec y0 = solve(s, rhs);
        double rho2 = dot(d, d);
        Vec my0 = mt.mul(y0);
        rho2 += 2.0 * dot(my0, d) + dot(my0, my0);
        double rad2 = 1.0 - rho2;
        if (rad2 < -1e-12) throw EmptySection("plane misses the ellipsoid");
        rad2 = std::max(0.0, rad2);
        Mat l = cholesky(s);
        Mat linv_t = lower_inverse(l).transposed();
        for (double& v : linv_t.a) v *= std::sqrt(rad2);
        return translate(linear_image(ball(m, 1.0), std::move(linv_t)), y0);
    }
    if (const auto* p = std::get_if<PolytopeHK>(&k.kind)) {
        std::vector<Halfspace> hs;
        for (const Halfspace& f : p->halfspaces) {
            Vec normal(m);
            for (int j = 0; j < m; ++j) normal[j] = dot(f.normal, h.basis[j]);
            hs.push_back({std::move(normal), f.offset - dot(f.normal, offset)});
        }
        try {
            return polytope_h(m, prune_section_halfspaces(std::move(hs)));
        } catch (const InvalidBody&) {
            throw EmptySection("plane misses the polytope");
        } catch (const UnboundedBody&) {
            throw EmptySection("degenerate polytope section");
        }
    }
    if (const auto* s = std::get_if<ScaleK>(&k.kind))
        return scale(section_body(*s->body, h, (1.0 / s->factor) * offset), s->factor);
    if (const auto* neg = std::get_if<NegateK>(&k.kind))
        return negate(section_body(*neg->body, h, -offset));
    if (const auto* t = std::get_if<TranslateK>(&k.kind))
        return section_body(*t->body, h, offset - t->shift);
    if (const auto* isec = std::get_if<IntersectionK>(&k.kind))
        return intersect(section_body(*isec->a, h, offset), section_body(*isec->b, h, offset));
    if (auto vs = vertices_of(k); vs && n <= 4 && vs->size() <= 64) {
        std::vector<Halfspace> facets = facet_halfspaces(n, *vs);
        if (!facets.empty()) {
            std::vector<Halfspace> hs;
            for (const Halfspace& f : facets) {
                Vec normal(m);
                for (int j = 0; j < m; ++j) normal[j] = dot(f.normal, h.basis[j]);
                hs.push_back({std::move(normal), f.offset - dot(f.normal, offset)});
            }
            try {
                return polytope_h(m, prune_section_halfspaces(std::move(hs)));
            } catch (const InvalidBody&) {
                throw EmptySection("plane misses the polytope");
            } catch (const UnboundedBody&) {
                throw EmptySection("degenerate polytope section");
            }
        }
    }
    throw UnsupportedSection("no section rule for this body kind");
}

}  // namespace wfl
