#include "wfl/wills.hpp"

#include <algorithm>
#include <cmath>

#include "wfl/errors.hpp"

namespace wfl {

namespace {

constexpr std::uint64_t kStreamWillsMc = 201;
constexpr std::uint64_t kStreamWillsRadial = 202;
constexpr std::uint64_t kStreamGaussian = 203;
constexpr std::uint64_t kStreamGaussianSearch = 204;
constexpr std::uint64_t kSlabStrata = 64;

struct TruncatedBox {
    Vec lo, hi;
    double boxvol = 0.0;
    double t_cap = 0.0;
};

TruncatedBox truncated_box(const Body& k, const Body& e, const WeightFunction& u,
                           const MCConfig& cfg) {
    TruncatedBox tb;
    tb.t_cap = u.inverse(u.u0 + cfg.s_max);
    const int n = k.dim;
    auto [klo, khi] = bounding_box(k);
    tb.lo.resize(n);
    tb.hi.resize(n);
    tb.boxvol = 1.0;
    for (int i = 0; i < n; ++i) {
        Vec dir(n, 0.0);
        dir[i] = 1.0;
        double pos = support(e, dir);
        dir[i] = -1.0;
        double neg = support(e, dir);
        tb.hi[i] = khi[i] + tb.t_cap * pos;
        tb.lo[i] = klo[i] - tb.t_cap * neg;
        tb.boxvol *= tb.hi[i] - tb.lo[i];
    }
    return tb;
}

}  // namespace

ValueWithError wills_sum(const Body& k, const Body& e, const WeightFunction& u,
                         const MCConfig& cfg) {
    if (k.dim != e.dim) throw Error("wills_sum dimension mismatch");
    require_origin_interior(e);
    const int n = k.dim;
    SteinerCoefficients sc = relative_steiner(k, e, cfg);
    double value = 0.0, var = 0.0, trunc = 0.0;
    for (int i = 0; i <= n; ++i) {
        ValueWithError m = moment(u, i, cfg);
        double coef = binom(n, i);
        value += coef * m.value * sc.W[i];
        var += coef * m.value * sc.stderr_[i] * coef * m.value * sc.stderr_[i];
        trunc += coef * m.stderr_ * std::fabs(sc.W[i]);
    }
    return {value, std::sqrt(var) + trunc};
}

ValueWithError wills_mc(const Body& k, const Body& e, const WeightFunction& u, const MCConfig& cfg) {
    if (k.dim != e.dim) throw Error("wills_mc dimension mismatch");
    require_origin_interior(e);
    if (!std::isfinite(u.u0)) throw Error("wills_mc needs finite u(0)");
    const int n = k.dim;
    TruncatedBox tb = truncated_box(k, e, u, cfg);
    if (tb.boxvol <= 0.0) return {0.0, 0.0};

    const Body* kb = &k;
    const Body* eb = &e;
    // jittered-slab stratification: the first coordinate is split into
    // equal slabs addressed by the sample index
    VecMeanEstimate est =
        mc_mean_vec(cfg, kStreamWillsMc, 2, [&](SampleRng& rng, std::vector<double>& out) {
            Vec x(n);
            std::uint64_t slab = rng.sample_index() % kSlabStrata;
            double width = (tb.hi[0] - tb.lo[0]) / double(kSlabStrata);
            x[0] = tb.lo[0] + (double(slab) + rng.uniform()) * width;
            for (int i = 1; i < n; ++i) x[i] = rng.uniform(tb.lo[i], tb.hi[i]);
            double d = gauge_distance(*kb, *eb, x);
            out[0] = std::exp(-u.eval(d));
            out[1] = d <= tb.t_cap ? 1.0 : 0.0;
        });
    double value = tb.boxvol * est.mean[0];
    double stderr_ = tb.boxvol * est.stderr_[0];
    double trunc = std::exp(-(u.u0 + cfg.s_max)) * tb.boxvol * est.mean[1];
    if (trunc > stderr_ + 1e-14)
        throw TruncationDominates("tail bound exceeds the sampling error");
    return {value, stderr_ + trunc};
}

ValueWithError wills_radial(const Body& k, const Body& e, const WeightFunction& u,
                            const MCConfig& cfg) {
    if (k.dim != e.dim) throw Error("wills_radial dimension mismatch");
    require_origin_interior(e);
    const int n = k.dim;
    TruncatedBox tb = truncated_box(k, e, u, cfg);
    if (tb.boxvol <= 0.0) return {0.0, 0.0};

    // composite Simpson in q = 1 - e^{-(s - u0)}; the integral becomes
    // e^{-u0} int_0^{q_max} vol(K + u^{-1}(s(q)) E) dq
    const int panels = 64;
    const int m = 2 * panels + 1;
    const double q_max = 1.0 - std::exp(-cfg.s_max);
    const double h = q_max / (m - 1);
    Vec nodes(m), weights(m);
    for (int j = 0; j < m; ++j) {
        double q = h * j;
        double s = u.u0 - std::log1p(-std::min(q, q_max));
        nodes[j] = u.inverse(s);
        double w = (j == 0 || j == m - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        weights[j] = std::exp(-u.u0) * w * h / 3.0;
    }
    // suffix sums: a sample at distance d contributes the weight of every
    // node with t_j >= d
    Vec suffix(m + 1, 0.0), suffix_coarse(m + 1, 0.0);
    for (int j = m - 1; j >= 0; --j) suffix[j] = suffix[j + 1] + weights[j];
    for (int j = m - 1; j >= 0; --j) {
        double wc = 0.0;
        if (j % 2 == 0) {
            double w = (j == 0 || j == m - 1) ? 1.0 : ((j / 2) % 2 == 1 ? 4.0 : 2.0);
            wc = std::exp(-u.u0) * w * (2.0 * h) / 3.0;
        }
        suffix_coarse[j] = suffix_coarse[j + 1] + wc;
    }

    const Body* kb = &k;
    const Body* eb = &e;
    VecMeanEstimate est =
        mc_mean_vec(cfg, kStreamWillsRadial, 2, [&](SampleRng& rng, std::vector<double>& out) {
            Vec x(n);
            for (int i = 0; i < n; ++i) x[i] = rng.uniform(tb.lo[i], tb.hi[i]);
            double d = gauge_distance(*kb, *eb, x);
            auto it = std::lower_bound(nodes.begin(), nodes.end(), d);
            std::size_t j = std::size_t(it - nodes.begin());
            out[0] = tb.boxvol * suffix[j];
            out[1] = tb.boxvol * suffix_coarse[j];
        });
    double value = est.mean[0];
    double discretization = std::fabs(est.mean[0] - est.mean[1]);
    double trunc = std::exp(-(u.u0 + cfg.s_max)) * tb.boxvol;
    return {value, est.stderr_[0] + discretization + trunc};
}

ValueWithError classical_wills(const Body& k, const MCConfig& cfg) {
    return wills_sum(k, *ball(k.dim, 1.0), classical_weight(), cfg);
}

ValueWithError gaussian_measure(const Body& k, const Vec& y, const MCConfig& cfg) {
    const int n = k.dim;
    if (int(y.size()) != n) throw Error("gaussian_measure shift dimension mismatch");
    const Body* kb = &k;
    MeanEstimate est = mc_mean(cfg, kStreamGaussian, [&](SampleRng& rng) {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
        return member(*kb, g - y, 1e-12) ? 1.0 : 0.0;
    });
    return {est.mean, est.stderr_};
}

GaussianSupResult sup_gaussian(const Body& k, const MCConfig& cfg) {
    GaussianSupResult r;
    const int n = k.dim;
    if (k.symmetric) {
        ValueWithError v = gaussian_measure(k, Vec(n, 0.0), cfg);
        r.value = v.value;
        r.stderr_ = v.stderr_;
        r.at.assign(n, 0.0);
        r.flag = "assumed_symmetric_max";
        return r;
    }
    // search-based lower bound: shift the body's centroid proxy to 0, then
    // compass search with common random numbers
    auto [lo, hi] = bounding_box(k);
    Vec y(n);
    double extent = 0.0;
    for (int i = 0; i < n; ++i) {
        y[i] = -0.5 * (lo[i] + hi[i]);
        extent = std::max(extent, hi[i] - lo[i]);
    }
    MCConfig probe = cfg.with_samples(std::max<std::uint64_t>(10000, cfg.samples / 10))
                         .with_stream_offset(kStreamGaussianSearch);
    auto eval = [&](const Vec& shift) { return gaussian_measure(k, shift, probe).value; };
    double best = eval(y);
    double step = std::max(0.25 * extent, 0.05);
    while (step > 1e-3) {
        bool improved = false;
        for (int i = 0; i < n; ++i)
            for (double s : {1.0, -1.0}) {
                Vec cand = y;
                cand[i] += s * step;
                double v = eval(cand);
                if (v > best) {
                    best = v;
                    y = std::move(cand);
                    improved = true;
                }
            }
        if (!improved) step *= 0.5;
    }
    ValueWithError final_eval = gaussian_measure(k, y, cfg);
    r.value = final_eval.value;
    r.stderr_ = final_eval.stderr_;
    r.at = y;
    r.flag = "search_lower_bound";
    return r;
}

}  // namespace wfl
