#include "wfl/logconcave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfl/errors.hpp"
#include "wfl/optimize.hpp"

namespace wfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kStreamConvolve = 301;
constexpr std::uint64_t kStreamPolarNorm = 302;
constexpr std::uint64_t kStreamPolarVolume = 303;

// support radius where e^{-u} drops below 1e-16 of its peak
double tail_radius(const WeightFunction& u) { return u.inverse(u.u0 + 37.0); }

double support_extent(const LogConcaveFn& f) {
    if (!f.effective_support) return 1.0;
    auto [lo, hi] = bounding_box(*f.effective_support);
    double e = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) e = std::max(e, std::fabs(hi[i] - lo[i]));
    return e;
}

// concave maximization with the shared start discipline; throws when two
// finite starts settle on visibly different values
double concave_max(const std::function<double(const Vec&)>& objective, std::vector<Vec> starts,
                   double scale) {
    double runner = kNegInf;
    CompassResult best =
        compass_max_multi(objective, starts, 0.5 * scale, 1e-9 * scale, &runner);
    if (!best.moved) return kNegInf;
    if (std::isfinite(runner) && best.value - runner > 1e-6 * (1.0 + std::fabs(best.value))) {
        // re-polish the runner-up with a fresh large step before giving up
        CompassResult again = compass_max(objective, best.at, scale, 1e-10 * scale);
        CompassResult confirm = compass_max(objective, starts[0], 2.0 * scale, 1e-10 * scale);
        double reconciled = std::max(again.value, confirm.value);
        if (std::isfinite(confirm.value) &&
            std::fabs(again.value - confirm.value) > 1e-6 * (1.0 + std::fabs(reconciled)))
            throw ConvergenceFailure("asplund-type maximization starts disagree");
        return reconciled;
    }
    return best.value;
}

}  // namespace

double eval_fn(const LogConcaveFn& f, const Vec& x) {
    double nl = f.neg_log(x);
    return std::isfinite(nl) ? std::exp(-nl) : 0.0;
}

LogConcaveFn indicator_fn(BodyPtr k) {
    LogConcaveFn f;
    f.dim = k->dim;
    f.kind = "indicator";
    f.body = k;
    f.effective_support = k;
    f.maximizer_hint = nearest_point(*k, Vec(k->dim, 0.0));
    BodyPtr kk = k;
    f.neg_log = [kk](const Vec& x) { return member(*kk, x, 1e-9) ? 0.0 : kInf; };
    return f;
}

LogConcaveFn gauge_exp_fn(BodyPtr e, const WeightFunction& u) {
    require_origin_interior(*e);
    LogConcaveFn f;
    f.dim = e->dim;
    f.kind = "gaussian_like";
    f.gauge = e;
    f.weight = std::make_shared<WeightFunction>(u);
    f.effective_support = scale(e, tail_radius(u));
    f.maximizer_hint = Vec(e->dim, 0.0);
    BodyPtr eb = e;
    auto w = f.weight;
    f.neg_log = [eb, w](const Vec& x) { return w->eval(gauge_value(*eb, x)); };
    return f;
}

LogConcaveFn wills_kernel_fn(BodyPtr k, BodyPtr e, const WeightFunction& u) {
    require_origin_interior(*e);
    LogConcaveFn f;
    f.dim = k->dim;
    f.kind = "wills_kernel";
    f.body = k;
    f.gauge = e;
    f.weight = std::make_shared<WeightFunction>(u);
    f.effective_support = minkowski_sum(k, scale(e, tail_radius(u)));
    f.maximizer_hint = nearest_point(*k, Vec(k->dim, 0.0));
    BodyPtr kb = k, eb = e;
    auto w = f.weight;
    f.neg_log = [kb, eb, w](const Vec& x) { return w->eval(gauge_distance(*kb, *eb, x)); };
    return f;
}

LogConcaveFn generic_fn(int dim, std::function<double(const Vec&)> neg_log,
                        std::optional<Vec> maximizer_hint, BodyPtr effective_support) {
    LogConcaveFn f;
    f.dim = dim;
    f.kind = "generic";
    f.neg_log = std::move(neg_log);
    f.maximizer_hint = std::move(maximizer_hint);
    f.effective_support = std::move(effective_support);
    return f;
}

LogConcaveFn as_generic(const LogConcaveFn& f) {
    LogConcaveFn g = f;
    g.kind = "generic";
    return g;
}

void validate_logconcave(const LogConcaveFn& f, double radius) {
    SampleRng rng(29, 41, 0);
    const int n = f.dim;
    for (int trial = 0; trial < 1000; ++trial) {
        Vec x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = rng.uniform(-radius, radius);
            y[i] = rng.uniform(-radius, radius);
        }
        double fx = f.neg_log(x), fy = f.neg_log(y);
        if (!std::isfinite(fx) || !std::isfinite(fy)) continue;
        double fm = f.neg_log(0.5 * (x + y));
        if (!(fm <= 0.5 * (fx + fy) + 1e-8)) throw Error("neg_log is not midpoint convex");
    }
}

double asplund(const LogConcaveFn& f, const LogConcaveFn& g, const Vec& z) {
    if (f.dim != g.dim) throw Error("asplund dimension mismatch");
    // structural shortcuts
    if (f.kind == "indicator" && g.kind == "indicator")
        return member(*minkowski_sum(f.body, g.body), z, 1e-9) ? 1.0 : 0.0;
    if (f.kind == "gaussian_like" && g.kind == "indicator")
        return std::exp(-f.weight->eval(gauge_distance(*g.body, *f.gauge, z)));
    if (g.kind == "gaussian_like" && f.kind == "indicator")
        return std::exp(-g.weight->eval(gauge_distance(*f.body, *g.gauge, z)));
    if (f.kind == "wills_kernel" && g.kind == "indicator")
        return std::exp(
            -f.weight->eval(gauge_distance(*minkowski_sum(f.body, g.body), *f.gauge, z)));
    if (g.kind == "wills_kernel" && f.kind == "indicator")
        return std::exp(
            -g.weight->eval(gauge_distance(*minkowski_sum(g.body, f.body), *g.gauge, z)));

    double scale = std::max({support_extent(f), support_extent(g), norm2(z), 1.0});
    auto objective = [&](const Vec& x) {
        double a = f.neg_log(x);
        if (!std::isfinite(a)) return kNegInf;
        double b = g.neg_log(z - x);
        if (!std::isfinite(b)) return kNegInf;
        return -(a + b);
    };
    std::vector<Vec> starts;
    Vec hf = f.maximizer_hint.value_or(Vec(f.dim, 0.0));
    Vec hg = g.maximizer_hint.value_or(Vec(f.dim, 0.0));
    starts.push_back(hf);
    starts.push_back(z - hg);
    starts.push_back(0.5 * (hf + (z - hg)));
    for (int i = 0; i < f.dim; ++i)
        for (double s : {1.0, -1.0}) {
            Vec p = starts[2];
            p[i] += s * 0.1 * scale;
            starts.push_back(std::move(p));
        }
    double v = concave_max(objective, starts, scale);
    return std::isfinite(v) ? std::exp(v) : 0.0;
}

ValueWithError convolve(const LogConcaveFn& f, const LogConcaveFn& g, const Vec& z,
                        const MCConfig& cfg) {
    if (f.dim != g.dim) throw Error("convolve dimension mismatch");
    if (!f.effective_support || !g.effective_support)
        throw UnboundedSupport("convolution needs effective supports");
    const int n = f.dim;
    auto [flo, fhi] = bounding_box(*f.effective_support);
    auto [glo, ghi] = bounding_box(*g.effective_support);
    Vec lo(n), hi(n);
    double boxvol = 1.0;
    for (int i = 0; i < n; ++i) {
        lo[i] = std::max(flo[i], z[i] - ghi[i]);
        hi[i] = std::min(fhi[i], z[i] - glo[i]);
        if (hi[i] <= lo[i]) return {0.0, 0.0};
        boxvol *= hi[i] - lo[i];
    }
    MeanEstimate est = mc_mean(cfg, kStreamConvolve, [&](SampleRng& rng) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        double a = f.neg_log(x);
        if (!std::isfinite(a)) return 0.0;
        double b = g.neg_log(z - x);
        if (!std::isfinite(b)) return 0.0;
        return std::exp(-(a + b));
    });
    return {boxvol * est.mean, boxvol * est.stderr_};
}

double lambda_difference(const LogConcaveFn& f, const LogConcaveFn& g, double lambda,
                         const Vec& z) {
    if (f.dim != g.dim) throw Error("lambda_difference dimension mismatch");
    if (!(lambda > 0.0 && lambda < 1.0)) throw Error("lambda must lie in (0,1)");
    const double a = 1.0 - lambda, b = lambda;
    if (f.kind == "indicator" && g.kind == "indicator") {
        auto set = minkowski_sum(scale(f.body, a * a), scale(negate(g.body), b * b));
        return member(*set, z, 1e-9) ? 1.0 : 0.0;
    }
    double scale_ = std::max({support_extent(f), support_extent(g), norm2(z), 1.0});
    auto objective = [&](const Vec& x) {
        double nf = f.neg_log((1.0 / a) * x);
        if (!std::isfinite(nf)) return kNegInf;
        // y = (z - a x) / b, the second factor reads g(-y/b)
        Vec arg = (1.0 / (b * b)) * (a * x - z);
        double ng = g.neg_log(arg);
        if (!std::isfinite(ng)) return kNegInf;
        return -(a * nf + b * ng);
    };
    Vec hf = f.maximizer_hint.value_or(Vec(f.dim, 0.0));
    Vec hg = g.maximizer_hint.value_or(Vec(f.dim, 0.0));
    std::vector<Vec> starts{a * hf, (1.0 / a) * (z + b * b * hg),
                            0.5 * (a * hf + (1.0 / a) * (z + b * b * hg))};
    for (int i = 0; i < f.dim; ++i)
        for (double s : {1.0, -1.0}) {
            Vec p = starts[2];
            p[i] += s * 0.1 * scale_;
            starts.push_back(std::move(p));
        }
    double v = concave_max(objective, starts, scale_);
    return std::isfinite(v) ? std::exp(v) : 0.0;
}

namespace {

// whole-function projection with structural shortcuts
LogConcaveFn project_whole(const LogConcaveFn& f, const Subspace& h) {
    // min over a fiber of the gauge distance is the gauge distance of the
    // projections, so the shortcut kinds project structurally
    if (f.kind == "indicator") return indicator_fn(project_body(*f.body, h));
    if (f.kind == "gaussian_like") return gauge_exp_fn(project_body(*f.gauge, h), *f.weight);
    if (f.kind == "wills_kernel")
        return wills_kernel_fn(project_body(*f.body, h), project_body(*f.gauge, h), *f.weight);
    // generic: pointwise maximization over the orthogonal complement
    Subspace hc = h.complement();
    LogConcaveFn g;
    g.dim = h.dim();
    g.kind = "generic";
    if (f.effective_support) g.effective_support = project_body(*f.effective_support, h);
    if (f.maximizer_hint) g.maximizer_hint = h.coords(*f.maximizer_hint);
    auto base = f;  // copy keeps the oracle alive
    g.neg_log = [base, h, hc](const Vec& x_h) {
        double scale = support_extent(base);
        Vec anchor = h.to_ambient(x_h);
        auto objective = [&](const Vec& yc) {
            double v = base.neg_log(anchor + hc.to_ambient(yc));
            return std::isfinite(v) ? -v : kNegInf;
        };
        std::vector<Vec> starts{Vec(hc.dim(), 0.0)};
        if (base.maximizer_hint) starts.push_back(hc.coords(*base.maximizer_hint));
        CompassResult r = compass_max_multi(objective, starts, 0.5 * scale, 1e-9 * scale);
        return r.moved ? -r.value : kInf;
    };
    return g;
}

}  // namespace

double project_fn(const LogConcaveFn& f, const Subspace& h, const Vec& x_h) {
    LogConcaveFn p = project_whole(f, h);
    return eval_fn(p, x_h);
}

double legendre(const std::function<double(const Vec&)>& phi, int dim, const Vec& x) {
    double scale = 1.0 + norm2(x);
    auto objective = [&](const Vec& y) {
        double p = phi(y);
        if (!std::isfinite(p)) return kNegInf;
        return dot(x, y) - p;
    };
    std::vector<Vec> starts{Vec(dim, 0.0), x};
    for (int i = 0; i < dim; ++i)
        for (double s : {1.0, -1.0}) {
            Vec e(dim, 0.0);
            e[i] = s * scale;
            starts.push_back(std::move(e));
        }
    CompassResult best = compass_max_multi(objective, starts, 2.0 * scale, 1e-10 * scale);
    if (!best.moved) return kNegInf;
    // ray probes catch linear growth the bounded search cannot see
    std::vector<Vec> dirs;
    if (norm2(best.at) > 0) dirs.push_back(normalized(best.at));
    if (norm2(x) > 0) dirs.push_back(normalized(x));
    for (int i = 0; i < dim; ++i)
        for (double s : {1.0, -1.0}) {
            Vec e(dim, 0.0);
            e[i] = s;
            dirs.push_back(std::move(e));
        }
    for (const Vec& d : dirs) {
        double v1 = objective(best.at + (1e4 * scale) * d);
        double v2 = objective(best.at + (2e4 * scale) * d);
        if (std::isfinite(v1) && std::isfinite(v2) && v2 > v1 + 1e-6 && v2 > best.value)
            return kInf;
        if (std::isfinite(v2) && v2 > best.value + 1e-6 * (1.0 + std::fabs(best.value)))
            return kInf;
    }
    return best.value;
}

double polar_fn(const LogConcaveFn& f, const Vec& x) {
    double l = legendre(f.neg_log, f.dim, x);
    if (l == kInf) return 0.0;
    return std::exp(-l);
}

ValueWithError polar_projection_norm(const LogConcaveFn& f, const Vec& v, const MCConfig& cfg) {
    if (!f.effective_support) throw UnboundedSupport("polar projection needs an effective support");
    Subspace h = Subspace::hyperplane(v);
    LogConcaveFn p = project_whole(f, h);
    const int m = h.dim();
    BodyPtr shadow = project_body(*f.effective_support, h);
    auto [lo, hi] = bounding_box(*shadow);
    double boxvol = 1.0;
    for (int i = 0; i < m; ++i) boxvol *= std::max(0.0, hi[i] - lo[i]);
    if (boxvol == 0.0) return {0.0, 0.0};
    MeanEstimate est = mc_mean(cfg, kStreamPolarNorm, [&](SampleRng& rng) {
        Vec x(m);
        for (int i = 0; i < m; ++i) x[i] = rng.uniform(lo[i], hi[i]);
        return eval_fn(p, x);
    });
    return {2.0 * boxvol * est.mean, 2.0 * boxvol * est.stderr_};
}

ValueWithError polar_projection_volume(const LogConcaveFn& f, const MCConfig& cfg) {
    const int n = f.dim;
    const int dirs = 64;
    MCConfig inner = cfg.with_samples(std::max<std::uint64_t>(20000, cfg.samples / dirs));
    double sum = 0.0, sum2 = 0.0, prop = 0.0;
    for (int j = 0; j < dirs; ++j) {
        SampleRng rng(cfg.seed, kStreamPolarVolume, std::uint64_t(j));
        Vec v(n);
        double nn;
        do {
            for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
            nn = norm2(v);
        } while (nn == 0.0);
        v = (1.0 / nn) * v;
        ValueWithError norm = polar_projection_norm(f, v, inner.with_stream_offset(j));
        double val = std::pow(norm.value, -double(n));
        sum += val;
        sum2 += val * val;
        prop += std::pow(double(n) * val / std::max(norm.value, 1e-300) * norm.stderr_, 2.0);
    }
    double mean = sum / dirs;
    double var = std::max(0.0, sum2 / dirs - mean * mean) / std::max(1, dirs - 1);
    double stderr_ = std::sqrt(var + prop / double(dirs) / double(dirs));
    return {kappa(n) * mean, kappa(n) * stderr_};
}

}  // namespace wfl
