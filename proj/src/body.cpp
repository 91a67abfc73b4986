#include "wfl/body.hpp"

#include <algorithm>
#include <cmath>

#include "wfl/errors.hpp"

namespace wfl {

namespace {

constexpr std::size_t kVertexProductCap = 4096;

bool is_ball_like(const Body& k, double& radius) {
    if (const auto* b = std::get_if<BallK>(&k.kind)) {
        radius = b->radius;
        return true;
    }
    return false;
}

bool vec_eq(const Vec& a, const Vec& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > tol) return false;
    return true;
}

bool vertex_set_symmetric(const std::vector<Vec>& vs) {
    for (const Vec& v : vs) {
        bool found = false;
        for (const Vec& w : vs)
            if (vec_eq(w, -v, 1e-12)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

BodyPtr make(int dim, bool symmetric, BodyKind kind) {
    auto b = std::make_shared<Body>();
    b->dim = dim;
    b->symmetric = symmetric;
    b->kind = std::move(kind);
    return b;
}

// Enumerate the vertices of a (bounded) H-polytope in dim <= 4 by solving
// all d x d subsystems of active constraints.
std::vector<Vec> enumerate_h_vertices(int n, const std::vector<Halfspace>& hs) {
    std::vector<Vec> verts;
    const std::size_t m = hs.size();
    std::vector<std::size_t> idx(n);
    auto try_subset = [&](const std::vector<std::size_t>& s) {
        Mat a(n, n);
        Vec b(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a(i, j) = hs[s[i]].normal[j];
            b[i] = hs[s[i]].offset;
        }
        Vec x;
        try {
            x = solve(a, b);
        } catch (const SingularSystem&) {
            return;
        }
        for (const Halfspace& h : hs) {
            double scale = 1.0 + std::fabs(h.offset);
            if (dot(h.normal, x) > h.offset + 1e-9 * scale) return;
        }
        for (const Vec& v : verts)
            if (vec_eq(v, x, 1e-9)) return;
        verts.push_back(std::move(x));
    };
    // iterate over all n-subsets of the m halfspaces
    std::vector<std::size_t> sel(n);
    auto rec = [&](auto&& self, std::size_t start, int depth) -> void {
        if (depth == n) {
            try_subset(sel);
            return;
        }
        for (std::size_t i = start; i + std::size_t(n - depth) <= m; ++i) {
            sel[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    if (m >= std::size_t(n)) rec(rec, 0, 0);
    return verts;
}

// Does {d : <a_j, d> <= 0 for all j} contain a nonzero direction? Checked by
// enumerating candidate edge directions from (n-1)-subsets (dim <= 4 only).
bool h_polytope_unbounded(int n, const std::vector<Halfspace>& hs) {
    const std::size_t m = hs.size();
    if (m < std::size_t(n)) return true;
    auto cone_contains = [&](const Vec& d) {
        if (norm2(d) < 1e-12) return false;
        for (const Halfspace& h : hs)
            if (dot(h.normal, d) > 1e-10 * norm2(d)) return false;
        return true;
    };
    if (n == 1) {
        Vec d{1.0};
        return cone_contains(d) || cone_contains(-d);
    }
    std::vector<std::size_t> sel(n - 1);
    bool unbounded = false;
    auto rec = [&](auto&& self, std::size_t start, int depth) -> void {
        if (unbounded) return;
        if (depth == n - 1) {
            // null direction of the selected rows
            std::vector<Vec> rows;
            for (int i = 0; i < n - 1; ++i) rows.push_back(hs[sel[i]].normal);
            std::vector<Vec> basis = orthonormalize(rows);
            // extend to find a vector orthogonal to all rows
            std::vector<Vec> all = basis;
            for (int j = 0; j < n; ++j) {
                Vec e(n, 0.0);
                e[j] = 1.0;
                all.push_back(std::move(e));
            }
            std::vector<Vec> full = orthonormalize(all);
            for (std::size_t j = basis.size(); j < full.size(); ++j)
                if (cone_contains(full[j]) || cone_contains(-full[j])) {
                    unbounded = true;
                    return;
                }
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            sel[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return unbounded;
}

}  // namespace

BodyPtr ball(int n, double radius) {
    if (n < 1 || radius < 0) throw InvalidBody("ball needs n >= 1, radius >= 0");
    return make(n, true, BallK{radius});
}

BodyPtr box(Vec lo, Vec hi) {
    if (lo.empty() || lo.size() != hi.size()) throw InvalidBody("box interval mismatch");
    bool sym = true;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) throw InvalidBody("box with lo > hi");
        if (std::fabs(lo[i] + hi[i]) > 1e-12) sym = false;
    }
    int n = int(lo.size());
    return make(n, sym, BoxK{std::move(lo), std::move(hi)});
}

BodyPtr cube(int n, double lo, double hi) { return box(Vec(n, lo), Vec(n, hi)); }

BodyPtr ellipsoid(Vec semi_axes) {
    for (double a : semi_axes)
        if (a <= 0) throw InvalidBody("ellipsoid semi-axes must be positive");
    int n = int(semi_axes.size());
    if (n < 1) throw InvalidBody("empty ellipsoid");
    return make(n, true, EllipsoidK{std::move(semi_axes)});
}

BodyPtr polytope_v(std::vector<Vec> vertices) {
    if (vertices.empty()) throw InvalidBody("polytope_v needs vertices");
    int n = int(vertices[0].size());
    for (const Vec& v : vertices)
        if (int(v.size()) != n) throw InvalidBody("polytope_v vertex dim mismatch");
    if (vertices.size() == 1) return point(vertices[0]);
    bool sym = vertex_set_symmetric(vertices);
    return make(n, sym, PolytopeVK{std::move(vertices)});
}

BodyPtr polytope_h(int n, std::vector<Halfspace> halfspaces) {
    if (halfspaces.empty()) throw UnboundedBody("polytope_h without halfspaces");
    for (auto& h : halfspaces) {
        if (int(h.normal.size()) != n) throw InvalidBody("halfspace normal dim mismatch");
        double nn = norm2(h.normal);
        if (nn < 1e-14) throw InvalidBody("zero halfspace normal");
    }
    PolytopeHK k{std::move(halfspaces), {}};
    if (n <= 4) {
        if (h_polytope_unbounded(n, k.halfspaces))
            throw UnboundedBody("h-polytope has a recession direction");
        k.vertex_cache = enumerate_h_vertices(n, k.halfspaces);
        if (k.vertex_cache.empty()) throw InvalidBody("h-polytope is empty");
    }
    bool sym = false;  // not provable cheaply from an H-description
    auto b = make(n, sym, std::move(k));
    if (n > 4) {
        // boundedness probe: support-function finiteness in 2n axis directions
        for (int i = 0; i < n; ++i)
            for (double sgn : {1.0, -1.0}) {
                Vec e(n, 0.0);
                e[i] = sgn;
                (void)support(*b, e);  // throws UnboundedBody on divergence
            }
    }
    return b;
}

BodyPtr segment(Vec a, Vec b) {
    if (a.size() != b.size() || a.empty()) throw InvalidBody("segment endpoint mismatch");
    bool sym = vec_eq(a, -b, 1e-12);
    int dim = int(a.size());
    return make(dim, sym, SegmentK{std::move(a), std::move(b)});
}

BodyPtr point(Vec location) {
    if (location.empty()) throw InvalidBody("point needs coordinates");
    bool sym = norm2(location) < 1e-12;
    int dim = int(location.size());
    return make(dim, sym, PointK{std::move(location)});
}

BodyPtr scale(BodyPtr k, double factor) {
    if (factor < 0) throw InvalidBody("scale factor must be >= 0");
    if (factor == 0.0) return point(Vec(k->dim, 0.0));
    if (factor == 1.0) return k;
    if (const auto* b = std::get_if<BallK>(&k->kind)) return ball(k->dim, factor * b->radius);
    if (const auto* b = std::get_if<BoxK>(&k->kind)) return box(factor * b->lo, factor * b->hi);
    if (const auto* e = std::get_if<EllipsoidK>(&k->kind)) return ellipsoid(factor * e->semi_axes);
    if (const auto* p = std::get_if<PolytopeVK>(&k->kind)) {
        std::vector<Vec> vs;
        for (const Vec& v : p->vertices) vs.push_back(factor * v);
        return polytope_v(std::move(vs));
    }
    if (const auto* s = std::get_if<SegmentK>(&k->kind)) return segment(factor * s->a, factor * s->b);
    if (const auto* p = std::get_if<PointK>(&k->kind)) return point(factor * p->location);
    if (const auto* s = std::get_if<ScaleK>(&k->kind)) return scale(s->body, factor * s->factor);
    if (const auto* t = std::get_if<TranslateK>(&k->kind))
        return translate(scale(t->body, factor), factor * t->shift);
    if (const auto* m = std::get_if<MinkowskiSumK>(&k->kind))
        return minkowski_sum(scale(m->a, factor), scale(m->b, factor));
    int dim = k->dim;
    bool sym = k->symmetric;
    return make(dim, sym, ScaleK{std::move(k), factor});
}

BodyPtr negate(BodyPtr k) {
    if (k->symmetric) return k;
    if (const auto* b = std::get_if<BoxK>(&k->kind)) return box(-b->hi, -b->lo);
    if (const auto* p = std::get_if<PolytopeVK>(&k->kind)) {
        std::vector<Vec> vs;
        for (const Vec& v : p->vertices) vs.push_back(-v);
        return polytope_v(std::move(vs));
    }
    if (const auto* s = std::get_if<SegmentK>(&k->kind)) return segment(-s->a, -s->b);
    if (const auto* p = std::get_if<PointK>(&k->kind)) return point(-p->location);
    if (const auto* n = std::get_if<NegateK>(&k->kind)) return n->body;
    if (const auto* t = std::get_if<TranslateK>(&k->kind)) return translate(negate(t->body), -t->shift);
    int dim = k->dim;
    return make(dim, false, NegateK{std::move(k)});
}

BodyPtr translate(BodyPtr k, Vec shift) {
    if (int(shift.size()) != k->dim) throw InvalidBody("translate shift dim mismatch");
    if (norm2(shift) == 0.0) return k;
    if (const auto* b = std::get_if<BoxK>(&k->kind)) return box(b->lo + shift, b->hi + shift);
    if (const auto* p = std::get_if<PolytopeVK>(&k->kind)) {
        std::vector<Vec> vs;
        for (const Vec& v : p->vertices) vs.push_back(v + shift);
        return polytope_v(std::move(vs));
    }
    if (const auto* s = std::get_if<SegmentK>(&k->kind)) return segment(s->a + shift, s->b + shift);
    if (const auto* p = std::get_if<PointK>(&k->kind)) return point(p->location + shift);
    if (const auto* t = std::get_if<TranslateK>(&k->kind)) return translate(t->body, t->shift + shift);
    int dim = k->dim;
    return make(dim, false, TranslateK{std::move(k), std::move(shift)});
}

BodyPtr minkowski_sum(BodyPtr a, BodyPtr b) {
    if (a->dim != b->dim) throw InvalidBody("minkowski_sum dim mismatch");
    // pull translations out, absorb points
    if (const auto* t = std::get_if<TranslateK>(&a->kind))
        return translate(minkowski_sum(t->body, b), t->shift);
    if (const auto* t = std::get_if<TranslateK>(&b->kind))
        return translate(minkowski_sum(a, t->body), t->shift);
    if (const auto* p = std::get_if<PointK>(&a->kind)) return translate(b, p->location);
    if (const auto* p = std::get_if<PointK>(&b->kind)) return translate(a, p->location);
    double ra, rb;
    if (is_ball_like(*a, ra) && is_ball_like(*b, rb)) return ball(a->dim, ra + rb);
    if (const auto* ba = std::get_if<BoxK>(&a->kind))
        if (const auto* bb = std::get_if<BoxK>(&b->kind)) return box(ba->lo + bb->lo, ba->hi + bb->hi);
    // polytope + polytope: pairwise vertex sums (kept unpruned; the support
    // and nearest-point oracles only need a superset of the vertices)
    auto va = vertices_of(*a);
    auto vb = vertices_of(*b);
    if (va && vb && va->size() * vb->size() <= kVertexProductCap) {
        std::vector<Vec> vs;
        vs.reserve(va->size() * vb->size());
        for (const Vec& x : *va)
            for (const Vec& y : *vb) vs.push_back(x + y);
        return polytope_v(std::move(vs));
    }
    bool sym = a->symmetric && b->symmetric;
    int dim = a->dim;
    return make(dim, sym, MinkowskiSumK{std::move(a), std::move(b)});
}

BodyPtr intersect(BodyPtr a, BodyPtr b) {
    if (a->dim != b->dim) throw InvalidBody("intersection dim mismatch");
    if (const auto* ba = std::get_if<BoxK>(&a->kind))
        if (const auto* bb = std::get_if<BoxK>(&b->kind)) {
            Vec lo(ba->lo), hi(ba->hi);
            for (int i = 0; i < a->dim; ++i) {
                lo[i] = std::max(lo[i], bb->lo[i]);
                hi[i] = std::min(hi[i], bb->hi[i]);
                if (lo[i] > hi[i]) throw InvalidBody("empty box intersection");
            }
            return box(std::move(lo), std::move(hi));
        }
    bool sym = a->symmetric && b->symmetric;
    int dim = a->dim;
    return make(dim, sym, IntersectionK{std::move(a), std::move(b)});
}

BodyPtr product(BodyPtr a, BodyPtr b) {
    if (const auto* ba = std::get_if<BoxK>(&a->kind))
        if (const auto* bb = std::get_if<BoxK>(&b->kind)) {
            Vec lo(ba->lo), hi(ba->hi);
            lo.insert(lo.end(), bb->lo.begin(), bb->lo.end());
            hi.insert(hi.end(), bb->hi.begin(), bb->hi.end());
            return box(std::move(lo), std::move(hi));
        }
    bool sym = a->symmetric && b->symmetric;
    int n = a->dim + b->dim;
    return make(n, sym, ProductK{std::move(a), std::move(b)});
}

BodyPtr linear_image(BodyPtr k, Mat t) {
    int n = k->dim;
    if (int(t.rows) != n || int(t.cols) != n) throw InvalidBody("linear_image matrix must be n x n");
    double d = det(t);
    bool orth = true;
    for (int i = 0; i < n && orth; ++i)
        for (int j = 0; j < n && orth; ++j) {
            double s = 0;
            for (int l = 0; l < n; ++l) s += t(l, i) * t(l, j);
            if (std::fabs(s - (i == j ? 1.0 : 0.0)) > 1e-12) orth = false;
        }
    // diagonal positive matrix applied to a ball is an ellipsoid
    if (std::get_if<BallK>(&k->kind)) {
        bool diag = true;
        for (int i = 0; i < n && diag; ++i)
            for (int j = 0; j < n && diag; ++j)
                if (i != j && std::fabs(t(i, j)) > 1e-14) diag = false;
        if (diag) {
            double r = std::get<BallK>(k->kind).radius;
            Vec axes(n);
            for (int i = 0; i < n; ++i) {
                if (t(i, i) <= 0) { diag = false; break; }
                axes[i] = r * t(i, i);
            }
            if (diag) return ellipsoid(std::move(axes));
        }
    }
    if (auto vs = vertices_of(*k); vs && vs->size() <= kVertexProductCap) {
        std::vector<Vec> mapped;
        for (const Vec& v : *vs) mapped.push_back(t.mul(v));
        if (std::get_if<SegmentK>(&k->kind)) return segment(mapped[0], mapped[1]);
        if (std::get_if<PointK>(&k->kind)) return point(mapped[0]);
        if (std::get_if<PolytopeVK>(&k->kind)) return polytope_v(std::move(mapped));
    }
    bool sym = k->symmetric;
    return make(n, sym, LinearImageK{std::move(k), std::move(t), orth, std::fabs(d)});
}

BodyPtr cross_polytope(int n, double radius) {
    std::vector<Vec> vs;
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            Vec v(n, 0.0);
            v[i] = s * radius;
            vs.push_back(std::move(v));
        }
    return polytope_v(std::move(vs));
}

BodyPtr convex_combination(BodyPtr k, BodyPtr l, double lambda) {
    return minkowski_sum(scale(std::move(k), 1.0 - lambda), scale(std::move(l), lambda));
}

// ---------------------------------------------------------------------------
// support function and support points

namespace {

Vec head(const Vec& u, int k) { return Vec(u.begin(), u.begin() + k); }
Vec tail(const Vec& u, int k) { return Vec(u.begin() + k, u.end()); }

Vec concat(const Vec& a, const Vec& b) {
    Vec r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// support of an H-polytope without a vertex cache: projected-gradient ascent
// onto the feasible set, then a vertex snap on the active constraints.
Vec polyh_support_point_ascent(const Body& body, const PolytopeHK& k, const Vec& u);

}  // namespace

double support(const Body& k, const Vec& u) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BallK>) {
                return v.radius * norm2(u);
            } else if constexpr (std::is_same_v<T, BoxK>) {
                double s = 0;
                for (std::size_t i = 0; i < u.size(); ++i) s += u[i] >= 0 ? v.hi[i] * u[i] : v.lo[i] * u[i];
                return s;
            } else if constexpr (std::is_same_v<T, EllipsoidK>) {
                double s = 0;
                for (std::size_t i = 0; i < u.size(); ++i) s += v.semi_axes[i] * v.semi_axes[i] * u[i] * u[i];
                return std::sqrt(s);
            } else if constexpr (std::is_same_v<T, PolytopeVK>) {
                double best = -1e300;
                for (const Vec& p : v.vertices) best = std::max(best, dot(p, u));
                return best;
            } else if constexpr (std::is_same_v<T, PolytopeHK>) {
                if (!v.vertex_cache.empty()) {
                    double best = -1e300;
                    for (const Vec& p : v.vertex_cache) best = std::max(best, dot(p, u));
                    return best;
                }
                return dot(polyh_support_point_ascent(k, v, u), u);
            } else if constexpr (std::is_same_v<T, SegmentK>) {
                return std::max(dot(v.a, u), dot(v.b, u));
            } else if constexpr (std::is_same_v<T, PointK>) {
                return dot(v.location, u);
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                return v.factor * support(*v.body, u);
            } else if constexpr (std::is_same_v<T, NegateK>) {
                return support(*v.body, -u);
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                return support(*v.body, u) + dot(v.shift, u);
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                return support(*v.a, u) + support(*v.b, u);
            } else if constexpr (std::is_same_v<T, IntersectionK>) {
                return dot(support_point(k, u), u);
            } else if constexpr (std::is_same_v<T, ProductK>) {
                return support(*v.a, head(u, v.a->dim)) + support(*v.b, tail(u, v.a->dim));
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                return support(*v.body, v.T.mul_transpose(u));
            } else {  // ProjectedK
                return support(*v.body, v.onto.to_ambient(u));
            }
        },
        k.kind);
}

Vec support_point(const Body& k, const Vec& u) {
    return std::visit(
        [&](const auto& v) -> Vec {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BallK>) {
                double n = norm2(u);
                if (n == 0) return Vec(k.dim, 0.0);
                return (v.radius / n) * u;
            } else if constexpr (std::is_same_v<T, BoxK>) {
                Vec p(k.dim);
                for (int i = 0; i < k.dim; ++i) p[i] = u[i] >= 0 ? v.hi[i] : v.lo[i];
                return p;
            } else if constexpr (std::is_same_v<T, EllipsoidK>) {
                Vec p(k.dim);
                double s = 0;
                for (int i = 0; i < k.dim; ++i) s += v.semi_axes[i] * v.semi_axes[i] * u[i] * u[i];
                s = std::sqrt(s);
                if (s == 0) return Vec(k.dim, 0.0);
                for (int i = 0; i < k.dim; ++i) p[i] = v.semi_axes[i] * v.semi_axes[i] * u[i] / s;
                return p;
            } else if constexpr (std::is_same_v<T, PolytopeVK>) {
                const Vec* best = &v.vertices[0];
                double bv = dot(*best, u);
                for (const Vec& p : v.vertices) {
                    double d = dot(p, u);
                    if (d > bv) { bv = d; best = &p; }
                }
                return *best;
            } else if constexpr (std::is_same_v<T, PolytopeHK>) {
                if (!v.vertex_cache.empty()) {
                    const Vec* best = &v.vertex_cache[0];
                    double bv = dot(*best, u);
                    for (const Vec& p : v.vertex_cache) {
                        double d = dot(p, u);
                        if (d > bv) { bv = d; best = &p; }
                    }
                    return *best;
                }
                return polyh_support_point_ascent(k, v, u);
            } else if constexpr (std::is_same_v<T, SegmentK>) {
                return dot(v.a, u) >= dot(v.b, u) ? v.a : v.b;
            } else if constexpr (std::is_same_v<T, PointK>) {
                return v.location;
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                return v.factor * support_point(*v.body, u);
            } else if constexpr (std::is_same_v<T, NegateK>) {
                return -support_point(*v.body, -u);
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                return support_point(*v.body, u) + v.shift;
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                return support_point(*v.a, u) + support_point(*v.b, u);
            } else if constexpr (std::is_same_v<T, IntersectionK>) {
                // linear maximization over the intersection by projected ascent
                double r = 0.5 * (support(*v.a, u) - (-support(*v.a, -u)));
                (void)r;
                Vec z = nearest_point(k, Vec(k.dim, 0.0));
                double radius = 0.0;
                for (int i = 0; i < k.dim; ++i) {
                    Vec e(k.dim, 0.0);
                    e[i] = 1.0;
                    radius = std::max(radius, std::fabs(support(*v.a, e)));
                    radius = std::max(radius, std::fabs(support(*v.a, -e)));
                }
                double un = norm2(u);
                if (un == 0) return z;
                Vec dir = (1.0 / un) * u;
                double step = std::max(radius, 1.0);
                for (int it = 0; it < 200; ++it) {
                    Vec cand = z;
                    axpy(step, dir, cand);
                    Vec proj = nearest_point(k, cand);
                    if (dot(proj, dir) > dot(z, dir) + 1e-15) {
                        z = proj;
                    } else {
                        step *= 0.5;
                        if (step < 1e-13 * std::max(1.0, radius)) break;
                    }
                }
                return z;
            } else if constexpr (std::is_same_v<T, ProductK>) {
                return concat(support_point(*v.a, head(u, v.a->dim)),
                              support_point(*v.b, tail(u, v.a->dim)));
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                return v.T.mul(support_point(*v.body, v.T.mul_transpose(u)));
            } else {  // ProjectedK
                Vec p = support_point(*v.body, v.onto.to_ambient(u));
                return v.onto.coords(p);
            }
        },
        k.kind);
}

namespace {

Vec polyh_support_point_ascent(const Body& body, const PolytopeHK& k, const Vec& u) {
    const int n = body.dim;
    // feasible start: project the origin onto the halfspace intersection
    Vec z = nearest_point(body, Vec(n, 0.0));
    Vec dir = normalized(u);
    double step = 1.0;
    double last = dot(z, dir);
    for (int it = 0; it < 4000; ++it) {
        Vec cand = z;
        axpy(step, dir, cand);
        Vec proj = nearest_point(body, cand);
        double val = dot(proj, dir);
        if (val > last + 1e-15 * (1.0 + std::fabs(last))) {
            z = proj;
            last = val;
            step *= 1.5;
        } else {
            step *= 0.5;
            if (step < 1e-12) break;
        }
        if (norm2(z) > 1e12) throw UnboundedBody("support ascent diverged");
    }
    // snap to a vertex of the active constraints when possible
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < k.halfspaces.size(); ++j) {
        const Halfspace& h = k.halfspaces[j];
        if (dot(h.normal, z) > h.offset - 1e-7 * (1.0 + std::fabs(h.offset))) active.push_back(j);
    }
    if (int(active.size()) >= n) {
        Mat a(n, n);
        Vec b(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a(i, j) = k.halfspaces[active[i]].normal[j];
            b[i] = k.halfspaces[active[i]].offset;
        }
        try {
            Vec vtx = solve(a, b);
            bool feasible = true;
            for (const Halfspace& h : k.halfspaces)
                if (dot(h.normal, vtx) > h.offset + 1e-8 * (1.0 + std::fabs(h.offset))) feasible = false;
            if (feasible && dot(vtx, dir) >= last - 1e-9) return vtx;
        } catch (const SingularSystem&) {
        }
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// membership

bool member(const Body& k, const Vec& x, double tol) {
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BallK>) {
                return norm2(x) <= v.radius + tol;
            } else if constexpr (std::is_same_v<T, BoxK>) {
                for (int i = 0; i < k.dim; ++i)
                    if (x[i] < v.lo[i] - tol || x[i] > v.hi[i] + tol) return false;
                return true;
            } else if constexpr (std::is_same_v<T, EllipsoidK>) {
                double s = 0;
                for (int i = 0; i < k.dim; ++i) {
                    double r = x[i] / v.semi_axes[i];
                    s += r * r;
                }
                return s <= 1.0 + tol;
            } else if constexpr (std::is_same_v<T, PolytopeHK>) {
                for (const Halfspace& h : v.halfspaces)
                    if (dot(h.normal, x) > h.offset + tol * (1.0 + std::fabs(h.offset))) return false;
                return true;
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                return member(*v.body, (1.0 / v.factor) * x, tol);
            } else if constexpr (std::is_same_v<T, NegateK>) {
                return member(*v.body, -x, tol);
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                return member(*v.body, x - v.shift, tol);
            } else if constexpr (std::is_same_v<T, IntersectionK>) {
                return member(*v.a, x, tol) && member(*v.b, x, tol);
            } else if constexpr (std::is_same_v<T, ProductK>) {
                return member(*v.a, head(x, v.a->dim), tol) && member(*v.b, tail(x, v.a->dim), tol);
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                if (v.absdet > 1e-14) {
                    Mat a = v.T;
                    try {
                        return member(*v.body, solve(a, x), tol);
                    } catch (const SingularSystem&) {
                    }
                }
                return euclidean_distance(k, x) <= tol;
            } else {
                return euclidean_distance(k, x) <= tol;
            }
        },
        k.kind);
}

// ---------------------------------------------------------------------------
// vertices, sampling, bounding boxes

std::optional<std::vector<Vec>> vertices_of(const Body& k) {
    return std::visit(
        [&](const auto& v) -> std::optional<std::vector<Vec>> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BoxK>) {
                if (k.dim > 12) return std::nullopt;
                std::vector<Vec> vs;
                for (std::size_t mask = 0; mask < (std::size_t(1) << k.dim); ++mask) {
                    Vec p(k.dim);
                    for (int i = 0; i < k.dim; ++i) p[i] = (mask >> i) & 1 ? v.hi[i] : v.lo[i];
                    vs.push_back(std::move(p));
                }
                return vs;
            } else if constexpr (std::is_same_v<T, PolytopeVK>) {
                return v.vertices;
            } else if constexpr (std::is_same_v<T, PolytopeHK>) {
                if (!v.vertex_cache.empty()) return v.vertex_cache;
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, SegmentK>) {
                return std::vector<Vec>{v.a, v.b};
            } else if constexpr (std::is_same_v<T, PointK>) {
                return std::vector<Vec>{v.location};
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                auto vs = vertices_of(*v.body);
                if (!vs) return std::nullopt;
                for (Vec& p : *vs) p = v.factor * p;
                return vs;
            } else if constexpr (std::is_same_v<T, NegateK>) {
                auto vs = vertices_of(*v.body);
                if (!vs) return std::nullopt;
                for (Vec& p : *vs) p = -p;
                return vs;
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                auto vs = vertices_of(*v.body);
                if (!vs) return std::nullopt;
                for (Vec& p : *vs) p = p + v.shift;
                return vs;
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                auto va = vertices_of(*v.a);
                auto vb = vertices_of(*v.b);
                if (!va || !vb || va->size() * vb->size() > kVertexProductCap) return std::nullopt;
                std::vector<Vec> vs;
                for (const Vec& x : *va)
                    for (const Vec& y : *vb) vs.push_back(x + y);
                return vs;
            } else if constexpr (std::is_same_v<T, ProductK>) {
                auto va = vertices_of(*v.a);
                auto vb = vertices_of(*v.b);
                if (!va || !vb || va->size() * vb->size() > kVertexProductCap) return std::nullopt;
                std::vector<Vec> vs;
                for (const Vec& x : *va)
                    for (const Vec& y : *vb) vs.push_back(concat(x, y));
                return vs;
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                auto vs = vertices_of(*v.body);
                if (!vs) return std::nullopt;
                for (Vec& p : *vs) p = v.T.mul(p);
                return vs;
            } else {
                return std::nullopt;
            }
        },
        k.kind);
}

std::optional<Vec> sample_point(const Body& k, SampleRng& rng) {
    return std::visit(
        [&](const auto& v) -> std::optional<Vec> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BallK>) {
                Vec d(k.dim);
                for (int i = 0; i < k.dim; ++i) d[i] = rng.gaussian();
                double n = norm2(d);
                if (n == 0) return Vec(k.dim, 0.0);
                double r = v.radius * std::pow(rng.uniform(), 1.0 / k.dim);
                return (r / n) * d;
            } else if constexpr (std::is_same_v<T, BoxK>) {
                Vec p(k.dim);
                for (int i = 0; i < k.dim; ++i) p[i] = rng.uniform(v.lo[i], v.hi[i]);
                return p;
            } else if constexpr (std::is_same_v<T, EllipsoidK>) {
                Vec d(k.dim);
                for (int i = 0; i < k.dim; ++i) d[i] = rng.gaussian();
                double n = norm2(d);
                if (n == 0) return Vec(k.dim, 0.0);
                double r = std::pow(rng.uniform(), 1.0 / k.dim);
                Vec p(k.dim);
                for (int i = 0; i < k.dim; ++i) p[i] = v.semi_axes[i] * r * d[i] / n;
                return p;
            } else if constexpr (std::is_same_v<T, PolytopeVK> || std::is_same_v<T, SegmentK>) {
                std::vector<Vec> vs =
                    std::is_same_v<T, SegmentK> ? *vertices_of(k) : std::get<PolytopeVK>(k.kind).vertices;
                // random convex combination (exponential weights)
                Vec p(k.dim, 0.0);
                double total = 0;
                std::vector<double> w(vs.size());
                for (std::size_t i = 0; i < vs.size(); ++i) {
                    double u;
                    do {
                        u = rng.uniform();
                    } while (u <= 0);
                    w[i] = -std::log(u);
                    total += w[i];
                }
                for (std::size_t i = 0; i < vs.size(); ++i) axpy(w[i] / total, vs[i], p);
                return p;
            } else if constexpr (std::is_same_v<T, PointK>) {
                return v.location;
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                auto p = sample_point(*v.body, rng);
                if (!p) return std::nullopt;
                return v.factor * *p;
            } else if constexpr (std::is_same_v<T, NegateK>) {
                auto p = sample_point(*v.body, rng);
                if (!p) return std::nullopt;
                return -*p;
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                auto p = sample_point(*v.body, rng);
                if (!p) return std::nullopt;
                return *p + v.shift;
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                auto p = sample_point(*v.a, rng);
                auto q = sample_point(*v.b, rng);
                if (!p || !q) return std::nullopt;
                return *p + *q;
            } else if constexpr (std::is_same_v<T, ProductK>) {
                auto p = sample_point(*v.a, rng);
                auto q = sample_point(*v.b, rng);
                if (!p || !q) return std::nullopt;
                return concat(*p, *q);
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                auto p = sample_point(*v.body, rng);
                if (!p) return std::nullopt;
                return v.T.mul(*p);
            } else {
                return std::nullopt;
            }
        },
        k.kind);
}

std::pair<Vec, Vec> bounding_box(const Body& k) {
    Vec lo(k.dim), hi(k.dim);
    for (int i = 0; i < k.dim; ++i) {
        Vec e(k.dim, 0.0);
        e[i] = 1.0;
        hi[i] = support(k, e);
        e[i] = -1.0;
        lo[i] = -support(k, e);
    }
    return {lo, hi};
}

void require_origin_interior(const Body& e) {
    for (int i = 0; i < e.dim; ++i)
        for (double s : {1.0, -1.0}) {
            Vec u(e.dim, 0.0);
            u[i] = s;
            if (support(e, u) < 1e-9) throw OriginNotInterior("support not strictly positive on axes");
        }
}

}  // namespace wfl
