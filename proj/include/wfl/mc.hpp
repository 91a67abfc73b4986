#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wfl/rng.hpp"

namespace wfl {

/// Default CLI seed (0x5EED_W1LL5 with the letters read as hex digits).
constexpr std::uint64_t kDefaultSeed = 0x5EED0071CC5ull;

struct MCConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 0;        // 0 = all available
    double s_max = 27.631;  // e^{-s_max} <= 1e-12
    double rel_tol = 1e-8;
    bool serial = false;    // force the serial reference kernel

    MCConfig with_samples(std::uint64_t n) const {
        MCConfig c = *this;
        c.samples = n;
        return c;
    }
    MCConfig with_stream_offset(std::uint64_t off) const {
        MCConfig c = *this;
        c.seed ^= (off * 0xA24BAED4963EE407ull);
        return c;
    }
};

struct MeanEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t n = 0;
};

struct VecMeanEstimate {
    std::vector<double> mean;
    std::vector<double> stderr_;
    std::uint64_t n = 0;
};

namespace detail {
constexpr std::uint64_t kBlock = 8192;

inline int resolve_workers(int workers) {
#ifdef _OPENMP
    if (workers > 0) return workers;
    return omp_get_max_threads();
#else
    (void)workers;
    return 1;
#endif
}
}  // namespace detail

/// Blocked Monte-Carlo mean of f(rng). Per-sample RNG substreams are keyed
/// by the sample index, and per-block partial sums are reduced in block
/// order, so the result is bit-identical for any worker count, including
/// the serial reference path (cfg.serial).
template <class F>
MeanEstimate mc_mean(const MCConfig& cfg, std::uint64_t stream, F&& f) {
    const std::uint64_t n = cfg.samples;
    const std::uint64_t nblocks = (n + detail::kBlock - 1) / detail::kBlock;
    std::vector<double> bsum(nblocks, 0.0), bsum2(nblocks, 0.0);

    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t lo = b * detail::kBlock;
        const std::uint64_t hi = std::min(n, lo + detail::kBlock);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            SampleRng rng(cfg.seed, stream, i);
            double v = f(rng);
            s += v;
            s2 += v * v;
        }
        bsum[b] = s;
        bsum2[b] = s2;
    };

    if (cfg.serial) {
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
#ifdef _OPENMP
        const int workers = detail::resolve_workers(cfg.workers);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (std::int64_t b = 0; b < std::int64_t(nblocks); ++b) run_block(std::uint64_t(b));
#else
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
#endif
    }

    double s = 0.0, s2 = 0.0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        s += bsum[b];
        s2 += bsum2[b];
    }
    MeanEstimate e;
    e.n = n;
    e.mean = s / double(n);
    double var = std::max(0.0, s2 / double(n) - e.mean * e.mean);
    e.stderr_ = n > 1 ? std::sqrt(var / double(n - 1)) : 0.0;
    return e;
}

/// Vector-valued variant: f fills a fixed-size value vector per sample.
template <class F>
VecMeanEstimate mc_mean_vec(const MCConfig& cfg, std::uint64_t stream, std::size_t dim, F&& f) {
    const std::uint64_t n = cfg.samples;
    const std::uint64_t nblocks = (n + detail::kBlock - 1) / detail::kBlock;
    std::vector<std::vector<double>> bsum(nblocks), bsum2(nblocks);

    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t lo = b * detail::kBlock;
        const std::uint64_t hi = std::min(n, lo + detail::kBlock);
        std::vector<double> s(dim, 0.0), s2(dim, 0.0), v(dim, 0.0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            SampleRng rng(cfg.seed, stream, i);
            f(rng, v);
            for (std::size_t j = 0; j < dim; ++j) {
                s[j] += v[j];
                s2[j] += v[j] * v[j];
            }
        }
        bsum[b] = std::move(s);
        bsum2[b] = std::move(s2);
    };

    if (cfg.serial) {
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
#ifdef _OPENMP
        const int workers = detail::resolve_workers(cfg.workers);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (std::int64_t b = 0; b < std::int64_t(nblocks); ++b) run_block(std::uint64_t(b));
#else
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
#endif
    }

    VecMeanEstimate e;
    e.n = n;
    e.mean.assign(dim, 0.0);
    e.stderr_.assign(dim, 0.0);
    std::vector<double> s(dim, 0.0), s2(dim, 0.0);
    for (std::uint64_t b = 0; b < nblocks; ++b)
        for (std::size_t j = 0; j < dim; ++j) {
            s[j] += bsum[b][j];
            s2[j] += bsum2[b][j];
        }
    for (std::size_t j = 0; j < dim; ++j) {
        e.mean[j] = s[j] / double(n);
        double var = std::max(0.0, s2[j] / double(n) - e.mean[j] * e.mean[j]);
        e.stderr_[j] = n > 1 ? std::sqrt(var / double(n - 1)) : 0.0;
    }
    return e;
}

}  // namespace wfl
