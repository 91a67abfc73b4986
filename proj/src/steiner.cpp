#include "wfl/steiner.hpp"

#include <algorithm>
#include <cmath>

#include "wfl/errors.hpp"

namespace wfl {

namespace {

constexpr std::uint64_t kStreamVolume = 101;
constexpr std::uint64_t kStreamFit = 102;
constexpr std::uint64_t kStreamWidth = 103;

const double kPi = 3.14159265358979323846;

Vec head(const Vec& u, int k) { return Vec(u.begin(), u.begin() + k); }
Vec tail(const Vec& u, int k) { return Vec(u.begin() + k, u.end()); }

double polygon_area(const std::vector<Vec>& hull) {
    double a = 0.0;
    const std::size_t m = hull.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec& p = hull[i];
        const Vec& q = hull[(i + 1) % m];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::fabs(a);
}

double polygon_perimeter(const std::vector<Vec>& hull) {
    double p = 0.0;
    const std::size_t m = hull.size();
    if (m < 2) return 0.0;
    for (std::size_t i = 0; i < m; ++i) p += norm2(hull[(i + 1) % m] - hull[i]);
    if (m == 2) p *= 0.5;  // segment counted once
    return p;
}

// exact volume of conv(vertices) by recursive facet pyramids
double polytope_volume(int n, const std::vector<Vec>& verts) {
    if (verts.empty()) return 0.0;
    if (n == 1) {
        double lo = verts[0][0], hi = lo;
        for (const Vec& v : verts) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        return hi - lo;
    }
    if (n == 2) return polygon_area(convex_hull_2d(verts));
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < verts.size(); ++i) diffs.push_back(verts[i] - verts[0]);
    if (int(orthonormalize(diffs).size()) < n) return 0.0;
    std::vector<Halfspace> facets = facet_halfspaces(n, verts);
    Vec centroid(n, 0.0);
    for (const Vec& v : verts) axpy(1.0 / double(verts.size()), v, centroid);
    double vol = 0.0;
    for (const Halfspace& f : facets) {
        std::vector<Vec> on;
        for (const Vec& v : verts)
            if (std::fabs(dot(f.normal, v) - f.offset) <= 1e-8 * (1.0 + std::fabs(f.offset)))
                on.push_back(v);
        if (on.size() < std::size_t(n)) continue;
        Subspace plane = Subspace::hyperplane(f.normal);
        std::vector<Vec> flat;
        for (const Vec& v : on) flat.push_back(plane.coords(v - on[0]));
        double base = polytope_volume(n - 1, flat);
        double height = f.offset - dot(f.normal, centroid);
        vol += base * height / double(n);
    }
    return vol;
}

Vec box_edges(const BoxK& b) {
    Vec e(b.lo.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = b.hi[i] - b.lo[i];
    return e;
}

Vec elementary_symmetric(const Vec& x) {
    Vec e(x.size() + 1, 0.0);
    e[0] = 1.0;
    for (double v : x)
        for (std::size_t i = e.size() - 1; i >= 1; --i) e[i] += v * e[i - 1];
    return e;
}

Vec convolve(const Vec& a, const Vec& b) {
    Vec c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// intrinsic volumes of A + rB from those of A (Steiner shift of the
// quermassintegral sequence)
Vec outer_parallel_intrinsic(const Vec& va, double r, int n) {
    Vec wa(n + 1), wk(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) wa[i] = kappa(i) * va[n - i] / binom(n, i);
    for (int j = 0; j <= n; ++j) {
        double s = 0.0;
        for (int i = j; i <= n; ++i)
            s += binom(n, i) * wa[i] * binom(i, j) * std::pow(r, double(i - j));
        wk[j] = s / binom(n, j);
    }
    Vec vk(n + 1);
    for (int i = 0; i <= n; ++i) vk[i] = binom(n, i) * wk[n - i] / kappa(n - i);
    return vk;
}

}  // namespace

double kappa(int n) {
    if (n < 0) throw Error("kappa of negative dimension");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

std::optional<double> exact_volume(const Body& k) {
    const int n = k.dim;
    if (const auto* b = std::get_if<BallK>(&k.kind)) return kappa(n) * std::pow(b->radius, n);
    if (const auto* b = std::get_if<BoxK>(&k.kind)) {
        double v = 1.0;
        for (double e : box_edges(*b)) v *= e;
        return v;
    }
    if (const auto* e = std::get_if<EllipsoidK>(&k.kind)) {
        double v = kappa(n);
        for (double a : e->semi_axes) v *= a;
        return v;
    }
    if (std::get_if<PointK>(&k.kind)) return 0.0;
    if (const auto* s = std::get_if<SegmentK>(&k.kind))
        return n == 1 ? std::fabs(s->b[0] - s->a[0]) : 0.0;
    if (const auto* s = std::get_if<ScaleK>(&k.kind)) {
        auto v = exact_volume(*s->body);
        if (!v) return std::nullopt;
        return std::pow(s->factor, n) * *v;
    }
    if (const auto* neg = std::get_if<NegateK>(&k.kind)) return exact_volume(*neg->body);
    if (const auto* t = std::get_if<TranslateK>(&k.kind)) return exact_volume(*t->body);
    if (const auto* li = std::get_if<LinearImageK>(&k.kind)) {
        auto v = exact_volume(*li->body);
        if (!v) return std::nullopt;
        return li->absdet * *v;
    }
    if (const auto* p = std::get_if<ProductK>(&k.kind)) {
        auto va = exact_volume(*p->a);
        auto vb = exact_volume(*p->b);
        if (!va || !vb) return std::nullopt;
        return *va * *vb;
    }
    if (auto vs = vertices_of(k)) {
        if (n == 2) return polytope_volume(2, *vs);
        if (n <= 4 && vs->size() <= 64) return polytope_volume(n, *vs);
    }
    if (auto vi = exact_intrinsic_volumes(k)) return vi->back();
    return std::nullopt;
}

ValueWithError volume(const Body& k, const MCConfig& cfg) {
    if (auto v = exact_volume(k)) return {*v, 0.0};
    auto [lo, hi] = bounding_box(k);
    double boxvol = 1.0;
    for (int i = 0; i < k.dim; ++i) boxvol *= std::max(0.0, hi[i] - lo[i]);
    if (boxvol == 0.0) return {0.0, 0.0};
    const Body* body = &k;
    Vec lo_v = lo, hi_v = hi;
    MeanEstimate e = mc_mean(cfg, kStreamVolume, [&](SampleRng& rng) {
        Vec x(body->dim);
        for (int i = 0; i < body->dim; ++i) x[i] = rng.uniform(lo_v[i], hi_v[i]);
        return member(*body, x, 1e-12) ? 1.0 : 0.0;
    });
    return {boxvol * e.mean, boxvol * e.stderr_};
}

std::optional<Vec> exact_intrinsic_volumes(const Body& k) {
    const int n = k.dim;
    if (const auto* b = std::get_if<BallK>(&k.kind)) {
        Vec v(n + 1);
        for (int i = 0; i <= n; ++i)
            v[i] = binom(n, i) * kappa(n) / kappa(n - i) * std::pow(b->radius, i);
        return v;
    }
    if (const auto* b = std::get_if<BoxK>(&k.kind)) return elementary_symmetric(box_edges(*b));
    if (std::get_if<PointK>(&k.kind)) {
        Vec v(n + 1, 0.0);
        v[0] = 1.0;
        return v;
    }
    if (const auto* s = std::get_if<SegmentK>(&k.kind)) {
        Vec v(n + 1, 0.0);
        v[0] = 1.0;
        if (n >= 1) v[1] = norm2(s->b - s->a);
        return v;
    }
    if (const auto* s = std::get_if<ScaleK>(&k.kind)) {
        auto v = exact_intrinsic_volumes(*s->body);
        if (!v) return std::nullopt;
        for (int i = 0; i <= n; ++i) (*v)[i] *= std::pow(s->factor, i);
        return v;
    }
    if (const auto* neg = std::get_if<NegateK>(&k.kind)) return exact_intrinsic_volumes(*neg->body);
    if (const auto* t = std::get_if<TranslateK>(&k.kind)) return exact_intrinsic_volumes(*t->body);
    if (const auto* li = std::get_if<LinearImageK>(&k.kind)) {
        if (li->orthogonal) return exact_intrinsic_volumes(*li->body);
        return std::nullopt;
    }
    if (const auto* p = std::get_if<ProductK>(&k.kind)) {
        auto va = exact_intrinsic_volumes(*p->a);
        auto vb = exact_intrinsic_volumes(*p->b);
        if (!va || !vb) return std::nullopt;
        Vec c = convolve(*va, *vb);
        c.resize(n + 1, 0.0);
        return c;
    }
    if (const auto* sum = std::get_if<MinkowskiSumK>(&k.kind)) {
        const BallK* ball_part = std::get_if<BallK>(&sum->a->kind);
        const Body* other = sum->b.get();
        if (!ball_part) {
            ball_part = std::get_if<BallK>(&sum->b->kind);
            other = sum->a.get();
        }
        if (ball_part) {
            auto va = exact_intrinsic_volumes(*other);
            if (!va) return std::nullopt;
            return outer_parallel_intrinsic(*va, ball_part->radius, n);
        }
        return std::nullopt;
    }
    if (n == 1) {
        if (auto vs = vertices_of(k)) {
            double lo = 1e300, hi = -1e300;
            for (const Vec& p : *vs) {
                lo = std::min(lo, p[0]);
                hi = std::max(hi, p[0]);
            }
            return Vec{1.0, hi - lo};
        }
    }
    if (n == 2) {
        if (auto vs = vertices_of(k)) {
            std::vector<Vec> hull = convex_hull_2d(*vs);
            Vec v(3);
            v[0] = 1.0;
            v[1] = 0.5 * polygon_perimeter(hull);
            v[2] = polygon_area(hull);
            return v;
        }
    }
    return std::nullopt;
}

IntrinsicVolumes intrinsic_volumes(const Body& k, const MCConfig& cfg) {
    if (auto v = exact_intrinsic_volumes(k)) return {*v, Vec(v->size(), 0.0), true};
    const int n = k.dim;
    SteinerCoefficients sc = steiner_fit(k, *ball(n, 1.0), cfg);
    Vec v(n + 1), err(n + 1);
    for (int i = 0; i <= n; ++i) {
        v[i] = binom(n, i) * sc.W[n - i] / kappa(n - i);
        err[i] = binom(n, i) * sc.stderr_[n - i] / kappa(n - i);
    }
    return {v, err, false};
}

std::optional<Vec> exact_relative_steiner(const Body& k, const Body& e) {
    const int n = k.dim;
    if (const auto* t = std::get_if<TranslateK>(&k.kind)) return exact_relative_steiner(*t->body, e);
    if (const auto* t = std::get_if<TranslateK>(&e.kind)) return exact_relative_steiner(k, *t->body);
    if (const auto* eb = std::get_if<BallK>(&e.kind)) {
        auto vi = exact_intrinsic_volumes(k);
        if (!vi) return std::nullopt;
        Vec w(n + 1);
        for (int i = 0; i <= n; ++i)
            w[i] = kappa(i) * (*vi)[n - i] / binom(n, i) * std::pow(eb->radius, i);
        return w;
    }
    if (const auto* kb = std::get_if<BoxK>(&k.kind)) {
        if (const auto* eb = std::get_if<BoxK>(&e.kind)) {
            // vol(K + tE) = prod (a_j + b_j t)
            Vec a = box_edges(*kb), b = box_edges(*eb);
            Vec c{1.0};
            for (int j = 0; j < n; ++j) c = convolve(c, Vec{a[j], b[j]});
            Vec w(n + 1);
            for (int i = 0; i <= n; ++i) w[i] = c[i] / binom(n, i);
            return w;
        }
    }
    if (std::get_if<BallK>(&k.kind)) {
        // W_i(K;E) = W_{n-i}(E;K)
        auto rev = exact_relative_steiner(e, k);
        if (!rev) return std::nullopt;
        Vec w(n + 1);
        for (int i = 0; i <= n; ++i) w[i] = (*rev)[n - i];
        return w;
    }
    return std::nullopt;
}

SteinerCoefficients steiner_fit(const Body& k, const Body& e, const MCConfig& cfg) {
    const int n = k.dim;
    if (e.dim != n) throw Error("steiner_fit dimension mismatch");
    require_origin_interior(e);

    double inr = 1e300;
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            Vec u(n, 0.0);
            u[i] = s;
            inr = std::min(inr, support(e, u));
        }
    double cr = circumradius(k).value;
    double t_max = cr > 0 ? 2.0 * cr / inr : 2.0;

    const int m = 2 * (n + 1);
    Vec nodes(m);
    for (int j = 0; j < m; ++j) nodes[j] = 0.5 * t_max * (1.0 - std::cos(kPi * j / (m - 1)));

    auto [klo, khi] = bounding_box(k);
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Vec u(n, 0.0);
        u[i] = 1.0;
        double he_pos = support(e, u);
        u[i] = -1.0;
        double he_neg = support(e, u);
        hi[i] = khi[i] + t_max * he_pos;
        lo[i] = klo[i] - t_max * he_neg;
    }
    double boxvol = 1.0;
    for (int i = 0; i < n; ++i) boxvol *= hi[i] - lo[i];

    const Body* kb = &k;
    const Body* ebp = &e;
    VecMeanEstimate est = mc_mean_vec(cfg, kStreamFit, m, [&](SampleRng& rng, std::vector<double>& out) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        double d = gauge_distance(*kb, *ebp, x);
        for (int j = 0; j < m; ++j) out[j] = d <= nodes[j] ? 1.0 : 0.0;
    });

    Vec vols(m), p = est.mean;
    for (int j = 0; j < m; ++j) vols[j] = boxvol * p[j];

    Mat a(m, n + 1);
    for (int j = 0; j < m; ++j) {
        double t = 1.0;
        for (int i = 0; i <= n; ++i) {
            a(j, i) = t;
            t *= nodes[j];
        }
    }
    Vec c = lstsq(a, vols);

    // covariance of the node volumes: the indicator events are nested, so
    // Cov(p_j, p_l) = p_min(j,l) (1 - p_max(j,l)) / N
    const double nn = double(est.n);
    Mat cov(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
            double pj = std::min(p[j], p[l]), pl = std::max(p[j], p[l]);
            cov(j, l) = boxvol * boxvol * std::max(0.0, pj * (1.0 - pl)) / nn;
        }

    // propagate through the pseudoinverse M = (A^T A)^{-1} A^T
    Mat g(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int l = 0; l <= n; ++l) {
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += a(j, i) * a(j, l);
            g(i, l) = s;
        }
    Mat pinv(n + 1, m);
    for (int j = 0; j < m; ++j) {
        Vec col(n + 1);
        for (int i = 0; i <= n; ++i) col[i] = a(j, i);
        Vec x = solve(g, col);
        for (int i = 0; i <= n; ++i) pinv(i, j) = x[i];
    }
    Vec cvar(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) s += pinv(i, j) * cov(j, l) * pinv(i, l);
        cvar[i] = std::max(0.0, s);
    }

    // residual vs propagated noise
    double res2 = 0.0, noise2 = 0.0;
    for (int j = 0; j < m; ++j) {
        double fit = 0.0, t = 1.0;
        for (int i = 0; i <= n; ++i) {
            fit += c[i] * t;
            t *= nodes[j];
        }
        res2 += (fit - vols[j]) * (fit - vols[j]);
        noise2 += cov(j, j);
    }
    double scale = std::max(1.0, boxvol);
    if (std::sqrt(res2) > 5.0 * std::sqrt(noise2) + 1e-9 * scale)
        throw IllConditionedFit("polynomial residual exceeds sampling noise");

    SteinerCoefficients sc;
    sc.n = n;
    sc.method = "mc_fit";
    sc.W.resize(n + 1);
    sc.stderr_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        sc.W[i] = c[i] / binom(n, i);
        sc.stderr_[i] = std::sqrt(cvar[i]) / binom(n, i);
    }
    return sc;
}

SteinerCoefficients relative_steiner(const Body& k, const Body& e, const MCConfig& cfg) {
    if (auto w = exact_relative_steiner(k, e)) {
        SteinerCoefficients sc;
        sc.n = k.dim;
        sc.method = "closed_form";
        sc.W = *w;
        sc.stderr_.assign(w->size(), 0.0);
        return sc;
    }
    return steiner_fit(k, e, cfg);
}

ValueWithError mean_width_V1(const Body& k, const MCConfig& cfg) {
    if (auto v = exact_intrinsic_volumes(k)) return {(*v)[1], 0.0};
    const int n = k.dim;
    const Body* kb = &k;
    MeanEstimate e = mc_mean(cfg, kStreamWidth, [&](SampleRng& rng) {
        Vec u(n);
        double nn;
        do {
            for (int i = 0; i < n; ++i) u[i] = rng.gaussian();
            nn = norm2(u);
        } while (nn == 0.0);
        return support(*kb, (1.0 / nn) * u);
    });
    double factor = double(n) * kappa(n) / kappa(n - 1);
    return {factor * e.mean, factor * e.stderr_};
}

}  // namespace wfl
