#pragma once

#include <cmath>
#include <cstdint>

namespace wfl {

/// Philox4x32-10 counter-based generator. The state is the (key, counter)
/// pair passed to each call, so any sample index can be evaluated out of
/// order: parallel and serial sweeps produce identical streams.
struct Philox {
    static constexpr std::uint32_t M0 = 0xD2511F53u;
    static constexpr std::uint32_t M1 = 0xCD9E8D57u;
    static constexpr std::uint32_t W0 = 0x9E3779B9u;
    static constexpr std::uint32_t W1 = 0xBB67AE85u;

    struct Block {
        std::uint32_t v[4];
    };

    static Block block(std::uint64_t key, std::uint64_t hi, std::uint64_t lo) {
        std::uint32_t c0 = std::uint32_t(lo), c1 = std::uint32_t(lo >> 32);
        std::uint32_t c2 = std::uint32_t(hi), c3 = std::uint32_t(hi >> 32);
        std::uint32_t k0 = std::uint32_t(key), k1 = std::uint32_t(key >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = std::uint64_t(M0) * c0;
            std::uint64_t p1 = std::uint64_t(M1) * c2;
            std::uint32_t h0 = std::uint32_t(p0 >> 32), l0 = std::uint32_t(p0);
            std::uint32_t h1 = std::uint32_t(p1 >> 32), l1 = std::uint32_t(p1);
            std::uint32_t n0 = h1 ^ c1 ^ k0;
            std::uint32_t n1 = l1;
            std::uint32_t n2 = h0 ^ c3 ^ k1;
            std::uint32_t n3 = l0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += W0; k1 += W1;
        }
        return Block{{c0, c1, c2, c3}};
    }
};

/// Random draws for one logical sample. Words are consumed from Philox
/// blocks keyed by (seed xor stream, sample index, draw counter), so every
/// sample owns an independent substream of unbounded length.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t sample)
        : key_(seed ^ (stream * 0x9E3779B97F4A7C15ull)), sample_(sample) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            blk_ = Philox::block(key_, sample_, ctr_++);
            pos_ = 0;
        }
        return blk_.v[pos_++];
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() {
        std::uint64_t hi = next_u32(), lo = next_u32();
        std::uint64_t bits = (hi << 32 | lo) >> 11;
        return double(bits) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller; caches the second deviate.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t sample_index() const { return sample_; }

private:
    std::uint64_t key_;
    std::uint64_t sample_;
    std::uint64_t ctr_ = 0;
    Philox::Block blk_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wfl
