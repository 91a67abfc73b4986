#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "wfl/body.hpp"
#include "wfl/errors.hpp"

namespace wfl {

namespace {

Vec head(const Vec& u, int k) { return Vec(u.begin(), u.begin() + k); }
Vec tail(const Vec& u, int k) { return Vec(u.begin() + k, u.end()); }

Vec concat(const Vec& a, const Vec& b) {
    Vec r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// --- Wolfe's min-norm-point algorithm over a finite point set -------------

// Affine minimizer of |sum alpha_i s_i| with sum alpha_i = 1, via the
// bordered Gram system. A tiny ridge keeps near-duplicate atoms solvable.
Vec affine_minimizer(const std::vector<Vec>& s) {
    const std::size_t m = s.size();
    Mat a(m + 1, m + 1);
    Vec b(m + 1, 0.0);
    double trace = 0.0;
    for (std::size_t i = 0; i < m; ++i) trace += dot(s[i], s[i]);
    double ridge = 1e-13 * (trace / double(m) + 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a(i, j) = dot(s[i], s[j]);
        a(i, i) += ridge;
        a(i, m) = 1.0;
        a(m, i) = 1.0;
    }
    b[m] = 1.0;
    Vec sol = solve(a, b);
    sol.resize(m);
    return sol;
}

}  // namespace

Vec nearest_point_convex_hull(const std::vector<Vec>& points, const Vec& x) {
    if (points.empty()) throw Error("nearest_point_convex_hull: no points");
    const int n = int(x.size());
    // shift so the query is the origin
    std::vector<Vec> p;
    p.reserve(points.size());
    for (const Vec& q : points) p.push_back(q - x);

    std::size_t start = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (dot(p[i], p[i]) < dot(p[start], p[start])) start = i;

    std::vector<Vec> s{p[start]};
    Vec w{1.0};
    Vec z = p[start];
    double scale = 1.0;
    for (const Vec& q : p) scale = std::max(scale, std::sqrt(dot(q, q)));

    for (int outer = 0; outer < 1000; ++outer) {
        // most negative direction atom
        std::size_t best = 0;
        double bv = dot(z, p[0]);
        for (std::size_t i = 1; i < p.size(); ++i) {
            double d = dot(z, p[i]);
            if (d < bv) { bv = d; best = i; }
        }
        if (dot(z, z) - bv <= 1e-12 * scale * scale) break;
        bool have = false;
        for (const Vec& q : s)
            if (norm2(q - p[best]) <= 1e-14 * scale) { have = true; break; }
        if (have) break;
        s.push_back(p[best]);
        w.push_back(0.0);

        for (int inner = 0; inner < 200; ++inner) {
            Vec alpha;
            try {
                alpha = affine_minimizer(s);
            } catch (const SingularSystem&) {
                s.pop_back();
                w.pop_back();
                goto done;
            }
            bool interior = true;
            for (double a : alpha)
                if (a <= 1e-12) { interior = false; break; }
            if (interior) {
                w = alpha;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (alpha[i] <= 1e-12 && w[i] - alpha[i] > 0)
                    theta = std::min(theta, w[i] / (w[i] - alpha[i]));
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - theta) * w[i] + theta * alpha[i];
            std::vector<Vec> s2;
            Vec w2;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] > 1e-12) {
                    s2.push_back(s[i]);
                    w2.push_back(w[i]);
                }
            if (s2.empty()) {
                s2.push_back(s[0]);
                w2.push_back(1.0);
            }
            s = std::move(s2);
            w = std::move(w2);
        }
        z.assign(n, 0.0);
        for (std::size_t i = 0; i < s.size(); ++i) axpy(w[i], s[i], z);
    }
done:
    z.assign(n, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) axpy(w[i], s[i], z);
    return z + x;
}

namespace {

// --- fully corrective Frank-Wolfe against a support-point oracle ----------

Vec nearest_via_support(int n, const Vec& x, const std::function<Vec(const Vec&)>& sp) {
    Vec u = norm2(x) > 0 ? x : Vec(n, 1.0);
    std::vector<Vec> atoms{sp(u)};
    Vec z = atoms[0];
    double scale = std::max(1.0, norm2(x)) + norm2(z);
    for (int it = 0; it < 300; ++it) {
        Vec g = z - x;
        if (norm2(g) <= 1e-12 * scale) break;
        Vec v = sp(-g);
        double gap = dot(g, z - v);
        if (gap <= 1e-14 * scale * scale) break;
        bool have = false;
        for (const Vec& a : atoms)
            if (norm2(a - v) <= 1e-13 * scale) { have = true; break; }
        if (have) break;
        atoms.push_back(v);
        z = nearest_point_convex_hull(atoms, x);
        if (atoms.size() > std::size_t(4 * n + 16)) {
            // keep the atoms that matter for the current point
            std::vector<Vec> kept;
            for (const Vec& a : atoms)
                if (norm2(a - z) <= 2.0 * scale) kept.push_back(a);
            if (kept.size() < atoms.size() && !kept.empty()) atoms = std::move(kept);
        }
    }
    return z;
}

// --- ellipsoid projection via the Lagrange multiplier ---------------------

Vec ellipsoid_nearest(const Vec& axes, const Vec& x) {
    const int n = int(axes.size());
    double inside = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = x[i] / axes[i];
        inside += r * r;
    }
    if (inside <= 1.0) return x;
    // p_i = a_i^2 x_i / (a_i^2 + lam), find lam > 0 with p on the boundary
    auto f = [&](double lam) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double t = axes[i] * x[i] / (axes[i] * axes[i] + lam);
            s += t * t;
        }
        return s - 1.0;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 0) hi *= 2.0;
    double lam = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fv = f(lam);
        if (std::fabs(fv) < 1e-14) break;
        double df = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = axes[i] * axes[i] + lam;
            df += -2.0 * axes[i] * axes[i] * x[i] * x[i] / (d * d * d);
        }
        if (fv > 0)
            lo = lam;
        else
            hi = lam;
        double next = df != 0.0 ? lam - fv / df : 0.5 * (lo + hi);
        lam = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
    }
    Vec p(n);
    for (int i = 0; i < n; ++i) p[i] = axes[i] * axes[i] * x[i] / (axes[i] * axes[i] + lam);
    return p;
}

Vec halfspace_nearest(const Halfspace& h, const Vec& x) {
    double v = dot(h.normal, x) - h.offset;
    if (v <= 0) return x;
    Vec p = x;
    axpy(-v / dot(h.normal, h.normal), h.normal, p);
    return p;
}

// Dykstra's alternating projections onto an intersection of sets, each given
// by its own projection map.
Vec dykstra(const Vec& x, const std::vector<std::function<Vec(const Vec&)>>& projections) {
    const int n = int(x.size());
    const std::size_t m = projections.size();
    Vec p = x;
    std::vector<Vec> inc(m, Vec(n, 0.0));
    double scale = std::max(1.0, norm2(x));
    for (int sweep = 0; sweep < 3000; ++sweep) {
        double moved = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            Vec y = p + inc[j];
            Vec q = projections[j](y);
            inc[j] = y - q;
            moved = std::max(moved, norm2(q - p));
            p = std::move(q);
        }
        if (moved <= 1e-12 * scale) break;
    }
    return p;
}

}  // namespace

Vec nearest_point(const Body& k, const Vec& x) {
    return std::visit(
        [&](const auto& v) -> Vec {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BallK>) {
                double n = norm2(x);
                if (n <= v.radius) return x;
                return (v.radius / n) * x;
            } else if constexpr (std::is_same_v<T, BoxK>) {
                Vec p(x);
                for (int i = 0; i < k.dim; ++i) p[i] = std::clamp(p[i], v.lo[i], v.hi[i]);
                return p;
            } else if constexpr (std::is_same_v<T, EllipsoidK>) {
                return ellipsoid_nearest(v.semi_axes, x);
            } else if constexpr (std::is_same_v<T, PolytopeVK>) {
                return nearest_point_convex_hull(v.vertices, x);
            } else if constexpr (std::is_same_v<T, PolytopeHK>) {
                if (!v.vertex_cache.empty()) return nearest_point_convex_hull(v.vertex_cache, x);
                std::vector<std::function<Vec(const Vec&)>> projs;
                for (const Halfspace& h : v.halfspaces)
                    projs.push_back([&h](const Vec& y) { return halfspace_nearest(h, y); });
                return dykstra(x, projs);
            } else if constexpr (std::is_same_v<T, SegmentK>) {
                Vec d = v.b - v.a;
                double dd = dot(d, d);
                if (dd == 0) return v.a;
                double t = std::clamp(dot(x - v.a, d) / dd, 0.0, 1.0);
                Vec p = v.a;
                axpy(t, d, p);
                return p;
            } else if constexpr (std::is_same_v<T, PointK>) {
                return v.location;
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                return v.factor * nearest_point(*v.body, (1.0 / v.factor) * x);
            } else if constexpr (std::is_same_v<T, NegateK>) {
                return -nearest_point(*v.body, -x);
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                return nearest_point(*v.body, x - v.shift) + v.shift;
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                // A + rB: step back to A, then out along the residual
                const BallK* ball_part = std::get_if<BallK>(&v.a->kind);
                const Body* other = v.b.get();
                if (!ball_part) {
                    ball_part = std::get_if<BallK>(&v.b->kind);
                    other = v.a.get();
                }
                if (ball_part) {
                    Vec q = nearest_point(*other, x);
                    Vec r = x - q;
                    double d = norm2(r);
                    if (d <= ball_part->radius) return x;
                    Vec p = q;
                    axpy(ball_part->radius / d, r, p);
                    return p;
                }
                const Body& body = k;
                return nearest_via_support(k.dim, x,
                                           [&body](const Vec& u) { return support_point(body, u); });
            } else if constexpr (std::is_same_v<T, IntersectionK>) {
                const BodyPtr a = v.a, b = v.b;
                std::vector<std::function<Vec(const Vec&)>> projs{
                    [a](const Vec& y) { return nearest_point(*a, y); },
                    [b](const Vec& y) { return nearest_point(*b, y); }};
                return dykstra(x, projs);
            } else if constexpr (std::is_same_v<T, ProductK>) {
                return concat(nearest_point(*v.a, head(x, v.a->dim)),
                              nearest_point(*v.b, tail(x, v.a->dim)));
            } else if constexpr (std::is_same_v<T, LinearImageK>) {
                if (v.orthogonal) return v.T.mul(nearest_point(*v.body, v.T.mul_transpose(x)));
                const Body& body = k;
                return nearest_via_support(k.dim, x,
                                           [&body](const Vec& u) { return support_point(body, u); });
            } else {  // ProjectedK
                const Body& body = k;
                return nearest_via_support(k.dim, x,
                                           [&body](const Vec& u) { return support_point(body, u); });
            }
        },
        k.kind);
}

double euclidean_distance(const Body& k, const Vec& x) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BallK>) {
                return std::max(0.0, norm2(x) - v.radius);
            } else if constexpr (std::is_same_v<T, BoxK>) {
                double s = 0.0;
                for (int i = 0; i < k.dim; ++i) {
                    double d = std::max({v.lo[i] - x[i], x[i] - v.hi[i], 0.0});
                    s += d * d;
                }
                return std::sqrt(s);
            } else if constexpr (std::is_same_v<T, ScaleK>) {
                return v.factor * euclidean_distance(*v.body, (1.0 / v.factor) * x);
            } else if constexpr (std::is_same_v<T, NegateK>) {
                return euclidean_distance(*v.body, -x);
            } else if constexpr (std::is_same_v<T, TranslateK>) {
                return euclidean_distance(*v.body, x - v.shift);
            } else if constexpr (std::is_same_v<T, MinkowskiSumK>) {
                const BallK* ball_part = std::get_if<BallK>(&v.a->kind);
                const Body* other = v.b.get();
                if (!ball_part) {
                    ball_part = std::get_if<BallK>(&v.b->kind);
                    other = v.a.get();
                }
                if (ball_part)
                    return std::max(0.0, euclidean_distance(*other, x) - ball_part->radius);
                return norm2(x - nearest_point(k, x));
            } else if constexpr (std::is_same_v<T, ProductK>) {
                double da = euclidean_distance(*v.a, head(x, v.a->dim));
                double db = euclidean_distance(*v.b, tail(x, v.a->dim));
                return std::sqrt(da * da + db * db);
            } else {
                return norm2(x - nearest_point(k, x));
            }
        },
        k.kind);
}

// ---------------------------------------------------------------------------
// gauges

double gauge_value(const Body& e, const Vec& x) {
    if (norm2(x) == 0.0) return 0.0;
    if (const auto* b = std::get_if<BallK>(&e.kind)) {
        if (b->radius <= 0) throw OriginNotInterior("degenerate ball gauge");
        return norm2(x) / b->radius;
    }
    if (const auto* b = std::get_if<BoxK>(&e.kind)) {
        double g = 0.0;
        for (int i = 0; i < e.dim; ++i) {
            if (x[i] > 0) {
                if (b->hi[i] <= 0) throw OriginNotInterior("box gauge");
                g = std::max(g, x[i] / b->hi[i]);
            } else if (x[i] < 0) {
                if (b->lo[i] >= 0) throw OriginNotInterior("box gauge");
                g = std::max(g, x[i] / b->lo[i]);
            }
        }
        return g;
    }
    if (const auto* el = std::get_if<EllipsoidK>(&e.kind)) {
        double s = 0.0;
        for (int i = 0; i < e.dim; ++i) {
            double r = x[i] / el->semi_axes[i];
            s += r * r;
        }
        return std::sqrt(s);
    }
    if (const auto* s = std::get_if<ScaleK>(&e.kind)) return gauge_value(*s->body, x) / s->factor;
    if (const auto* n = std::get_if<NegateK>(&e.kind)) return gauge_value(*n->body, -x);
    if (const auto* p = std::get_if<ProductK>(&e.kind))
        return std::max(gauge_value(*p->a, head(x, p->a->dim)), gauge_value(*p->b, tail(x, p->a->dim)));
    if (const auto* pv = std::get_if<PolytopeVK>(&e.kind)) {
        (void)pv;
    }
    // generic: bisection on t with the membership oracle
    double hi = 1.0;
    int guard = 0;
    while (!member(e, (1.0 / hi) * x, 1e-12) && guard++ < 200) hi *= 2.0;
    if (guard >= 200) throw OriginNotInterior("gauge did not stabilize");
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == 0.0) break;
        if (member(e, (1.0 / mid) * x, 1e-12))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

double gauge_interval_distance_1d(double lo_k, double hi_k, double lo_e, double hi_e, double x) {
    if (x >= lo_k && x <= hi_k) return 0.0;
    double v = x < lo_k ? x - lo_k : x - hi_k;  // signed offset to the interval
    if (v > 0) {
        if (hi_e <= 0) throw OriginNotInterior("gauge distance interval");
        return v / hi_e;
    }
    if (lo_e >= 0) throw OriginNotInterior("gauge distance interval");
    return v / lo_e;
}

double dual_gauge_distance(const Body& k, const Body& e, const Vec& x) {
    // d_E(x, K) = sup over directions u of (<x,u> - h_K(u)) / h_E(u); the
    // objective is quasiconcave where the numerator is positive, so a
    // multi-start compass search on the unit sphere finds the supremum.
    const int n = int(x.size());
    auto phi = [&](const Vec& u) {
        double he = support(e, u);
        if (he <= 1e-300) return -1e300;
        return (dot(x, u) - support(k, u)) / he;
    };
    std::vector<Vec> starts;
    Vec q = nearest_point(k, x);
    if (norm2(x - q) > 0) starts.push_back(normalized(x - q));
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            Vec u(n, 0.0);
            u[i] = s;
            starts.push_back(std::move(u));
        }
    SampleRng rng(11, 7, 0);
    for (int r = 0; r < 6; ++r) {
        Vec u(n);
        for (int i = 0; i < n; ++i) u[i] = rng.gaussian();
        if (norm2(u) > 0) starts.push_back(normalized(u));
    }
    double best = 0.0;
    for (Vec u : starts) {
        double f = phi(u);
        double step = 0.5;
        while (step > 1e-9) {
            bool improved = false;
            for (int i = 0; i < n; ++i)
                for (double s : {1.0, -1.0}) {
                    Vec cand = u;
                    cand[i] += s * step;
                    double cn = norm2(cand);
                    if (cn == 0) continue;
                    cand = (1.0 / cn) * cand;
                    double fc = phi(cand);
                    if (fc > f + 1e-16) {
                        f = fc;
                        u = std::move(cand);
                        improved = true;
                    }
                }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, f);
    }
    return std::max(0.0, best);
}

}  // namespace

double gauge_distance(const Body& k, const Body& e, const Vec& x) {
    if (const auto* b = std::get_if<BallK>(&e.kind)) {
        if (b->radius <= 0) throw OriginNotInterior("degenerate ball gauge");
        return euclidean_distance(k, x) / b->radius;
    }
    if (const auto* el = std::get_if<EllipsoidK>(&e.kind)) {
        // rescale coordinates so the gauge body becomes the unit ball
        const int n = int(x.size());
        if (const auto* kb = std::get_if<BoxK>(&k.kind)) {
            Vec y(n), lo(n), hi(n);
            for (int i = 0; i < n; ++i) {
                y[i] = x[i] / el->semi_axes[i];
                lo[i] = kb->lo[i] / el->semi_axes[i];
                hi[i] = kb->hi[i] / el->semi_axes[i];
            }
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                double d = std::max({lo[i] - y[i], y[i] - hi[i], 0.0});
                s += d * d;
            }
            return std::sqrt(s);
        }
        if (std::get_if<BallK>(&k.kind) == nullptr) {
            if (auto vs = vertices_of(k)) {
                Vec y(n);
                for (int i = 0; i < n; ++i) y[i] = x[i] / el->semi_axes[i];
                std::vector<Vec> scaled;
                scaled.reserve(vs->size());
                for (const Vec& v : *vs) {
                    Vec w(n);
                    for (int i = 0; i < n; ++i) w[i] = v[i] / el->semi_axes[i];
                    scaled.push_back(std::move(w));
                }
                return norm2(y - nearest_point_convex_hull(scaled, y));
            }
        }
    }
    if (const auto* s = std::get_if<ScaleK>(&e.kind))
        return gauge_distance(k, *s->body, x) / s->factor;
    if (const auto* eb = std::get_if<BoxK>(&e.kind)) {
        if (const auto* kb = std::get_if<BoxK>(&k.kind)) {
            double g = 0.0;
            for (int i = 0; i < int(x.size()); ++i)
                g = std::max(g, gauge_interval_distance_1d(kb->lo[i], kb->hi[i], eb->lo[i], eb->hi[i],
                                                           x[i]));
            return g;
        }
    }
    if (std::get_if<PointK>(&k.kind)) {
        const auto& p = std::get<PointK>(k.kind);
        return gauge_value(e, x - p.location);
    }
    if (member(k, x, 1e-12)) return 0.0;
    return dual_gauge_distance(k, e, x);
}

// ---------------------------------------------------------------------------
// circumradius

namespace {

struct MiniBall {
    Vec center;
    double r2 = -1.0;
    bool contains(const Vec& p) const {
        if (r2 < 0) return false;
        Vec d = p - center;
        return dot(d, d) <= r2 * (1.0 + 1e-10) + 1e-12;
    }
};

MiniBall ball_from_boundary(const std::vector<Vec>& b, int n) {
    MiniBall mb;
    if (b.empty()) return mb;
    if (b.size() == 1) {
        mb.center = b[0];
        mb.r2 = 0.0;
        return mb;
    }
    // center = b0 + sum lam_j (b_j - b_0), equidistance gives a Gram system
    const std::size_t m = b.size() - 1;
    Mat g(m, m);
    Vec rhs(m);
    std::vector<Vec> d;
    for (std::size_t j = 1; j < b.size(); ++j) d.push_back(b[j] - b[0]);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) g(i, j) = dot(d[i], d[j]);
        rhs[i] = 0.5 * dot(d[i], d[i]);
    }
    Vec lam;
    try {
        lam = solve(g, rhs);
    } catch (const SingularSystem&) {
        return mb;
    }
    mb.center = b[0];
    for (std::size_t j = 0; j < m; ++j) axpy(lam[j], d[j], mb.center);
    Vec r = b[0] - mb.center;
    mb.r2 = dot(r, r);
    (void)n;
    return mb;
}

MiniBall welzl(std::vector<Vec>& pts, std::vector<Vec>& boundary, std::size_t limit, int n) {
    if (limit == 0 || int(boundary.size()) == n + 1) return ball_from_boundary(boundary, n);
    MiniBall mb = welzl(pts, boundary, limit - 1, n);
    const Vec& p = pts[limit - 1];
    if (mb.contains(p)) return mb;
    boundary.push_back(p);
    MiniBall mb2 = welzl(pts, boundary, limit - 1, n);
    boundary.pop_back();
    if (mb2.r2 >= 0) return mb2;
    return mb;
}

MiniBall min_enclosing_ball(std::vector<Vec> pts, int n) {
    std::mt19937 gen(12345);
    std::shuffle(pts.begin(), pts.end(), gen);
    std::vector<Vec> boundary;
    return welzl(pts, boundary, pts.size(), n);
}

}  // namespace

CircumradiusResult circumradius(const Body& k) {
    if (const auto* b = std::get_if<BallK>(&k.kind)) return {b->radius, true};
    if (const auto* b = std::get_if<BoxK>(&k.kind)) {
        double s = 0.0;
        for (int i = 0; i < k.dim; ++i) {
            double d = 0.5 * (b->hi[i] - b->lo[i]);
            s += d * d;
        }
        return {std::sqrt(s), true};
    }
    if (const auto* e = std::get_if<EllipsoidK>(&k.kind)) {
        double m = 0.0;
        for (double a : e->semi_axes) m = std::max(m, a);
        return {m, true};
    }
    if (const auto* s = std::get_if<ScaleK>(&k.kind)) {
        auto r = circumradius(*s->body);
        return {s->factor * r.value, r.exact};
    }
    if (const auto* n = std::get_if<NegateK>(&k.kind)) return circumradius(*n->body);
    if (const auto* t = std::get_if<TranslateK>(&k.kind)) return circumradius(*t->body);
    if (auto vs = vertices_of(k)) {
        MiniBall mb = min_enclosing_ball(*vs, k.dim);
        if (mb.r2 >= 0) return {std::sqrt(mb.r2), true};
    }
    // approximate: min enclosing ball of sampled support points
    std::vector<Vec> pts;
    const int n = k.dim;
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            Vec u(n, 0.0);
            u[i] = s;
            pts.push_back(support_point(k, u));
        }
    SampleRng rng(23, 5, 0);
    int extra = std::min(512, 64 * n);
    for (int i = 0; i < extra; ++i) {
        Vec u(n);
        for (int j = 0; j < n; ++j) u[j] = rng.gaussian();
        if (norm2(u) == 0) continue;
        pts.push_back(support_point(k, normalized(u)));
    }
    MiniBall mb = min_enclosing_ball(pts, n);
    if (mb.r2 < 0) throw ConvergenceFailure("circumradius estimate failed");
    return {std::sqrt(mb.r2), false};
}

}  // namespace wfl
