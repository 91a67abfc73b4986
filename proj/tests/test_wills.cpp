#include <cmath>

#include "doctest.h"
#include "wfl/errors.hpp"
#include "wfl/wills.hpp"

using namespace wfl;

namespace {
const double kPi = 3.14159265358979323846;

MCConfig test_cfg(std::uint64_t samples = 200000) {
    MCConfig cfg;
    cfg.samples = samples;
    cfg.seed = 11;
    return cfg;
}
}  // namespace

TEST_CASE("weight presets validate and invert") {
    validate_weight(classical_weight());
    validate_weight(p_power_weight(2.0));
    validate_weight(p_power_weight(3.5));
    auto w = classical_weight();
    CHECK(w.eval(2.0) == doctest::Approx(4.0 * kPi));
    CHECK(w.inverse(kPi) == doctest::Approx(1.0));
    // square root is concave, the validator must refuse it
    auto bad = custom_weight([](double t) { return std::sqrt(t); }, 0.0);
    CHECK_THROWS_AS(validate_weight(bad), Error);
}

TEST_CASE("classical moments are reciprocal ball volumes") {
    MCConfig cfg = test_cfg();
    for (int i = 0; i <= 6; ++i) {
        ValueWithError m = moment(classical_weight(), i, cfg);
        CHECK(m.value == doctest::Approx(1.0 / kappa(i)).epsilon(1e-12));
        CHECK(m.stderr_ == 0.0);
    }
}

TEST_CASE("p-power moments match their quadrature evaluation") {
    MCConfig cfg = test_cfg();
    for (double p : {1.5, 2.0, 4.0}) {
        auto preset = p_power_weight(p);
        // same function routed through the numeric quadrature path
        auto numeric = custom_weight(preset.eval, 0.0, preset.inverse);
        for (int i = 1; i <= 4; ++i) {
            ValueWithError closed = moment(preset, i, cfg);
            ValueWithError quad = moment(numeric, i, cfg);
            CHECK(quad.value == doctest::Approx(closed.value).epsilon(1e-8));
        }
    }
}

TEST_CASE("p-power moments equal reciprocal p-ball volumes at p=2") {
    // u_2 coincides with the classical weight, so m_i = 1/kappa_i
    MCConfig cfg = test_cfg();
    for (int i = 1; i <= 4; ++i)
        CHECK(moment(p_power_weight(2.0), i, cfg).value == doctest::Approx(1.0 / kappa(i)));
}

TEST_CASE("moments of slowly growing weights diverge") {
    auto logw = custom_weight([](double t) { return 0.5 * std::log1p(t); }, 0.0);
    CHECK_THROWS_AS(moment(logw, 3, test_cfg()), DivergentMoment);
}

TEST_CASE("weighted Steiner route on closed-form bodies") {
    MCConfig cfg = test_cfg();
    // unit cube: W = 2^n, exactly
    ValueWithError c3 = wills_sum(*cube(3, 0.0, 1.0), *ball(3, 1.0), classical_weight(), cfg);
    CHECK(c3.value == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(c3.stderr_ == 0.0);

    // disk of radius r: 1 + pi r + pi r^2
    double r = 0.75;
    ValueWithError d = wills_sum(*ball(2, r), *ball(2, 1.0), classical_weight(), cfg);
    CHECK(d.value == doctest::Approx(1.0 + kPi * r + kPi * r * r).epsilon(1e-12));

    // point: only the i=0 term survives
    ValueWithError p = wills_sum(*point({0.0, 0.0, 0.0}), *ball(3, 1.0), classical_weight(), cfg);
    CHECK(p.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("direct integral route agrees with the exact cube value") {
    ValueWithError w = wills_mc(*cube(3, 0.0, 1.0), *ball(3, 1.0), classical_weight(), test_cfg());
    CHECK(std::fabs(w.value - 8.0) <= 3.0 * w.stderr_);
    CHECK(w.stderr_ > 0.0);
}

TEST_CASE("direct integral route is translation invariant") {
    MCConfig cfg = test_cfg();
    auto k = cube(2, 0.0, 1.0);
    ValueWithError a = wills_mc(*k, *ball(2, 1.0), classical_weight(), cfg);
    ValueWithError b = wills_mc(*translate(k, {5.0, -3.0}), *ball(2, 1.0), classical_weight(), cfg);
    CHECK(std::fabs(a.value - b.value) <= 3.0 * (a.stderr_ + b.stderr_));
}

TEST_CASE("the functional ignores the embedding dimension") {
    MCConfig cfg = test_cfg();
    ValueWithError flat = wills_mc(*cube(2, 0.0, 1.0), *ball(2, 1.0), classical_weight(), cfg);
    // same square living inside R^3
    ValueWithError emb =
        wills_mc(*box({0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}), *ball(3, 1.0), classical_weight(), cfg);
    CHECK(std::fabs(flat.value - 4.0) <= 3.0 * flat.stderr_);
    CHECK(std::fabs(emb.value - 4.0) <= 3.0 * emb.stderr_);
}

TEST_CASE("layer-cake route basics") {
    MCConfig cfg = test_cfg();
    ValueWithError p =
        wills_radial(*point({0.0, 0.0}), *ball(2, 1.0), classical_weight(), cfg);
    CHECK(std::fabs(p.value - 1.0) <= 3.0 * p.stderr_);

    double r = 0.5;
    ValueWithError d = wills_radial(*ball(2, r), *ball(2, 1.0), classical_weight(), cfg);
    CHECK(std::fabs(d.value - (1.0 + kPi * r + kPi * r * r)) <= 3.0 * d.stderr_);
}

TEST_CASE("three routes agree on a rounded cube") {
    MCConfig cfg = test_cfg(300000);
    auto k = minkowski_sum(cube(3, -0.5, 0.5), ball(3, 0.3));
    auto e = ball(3, 1.0);
    auto u = classical_weight();
    ValueWithError s = wills_sum(*k, *e, u, cfg);
    ValueWithError m = wills_mc(*k, *e, u, cfg);
    ValueWithError r = wills_radial(*k, *e, u, cfg);
    CHECK(s.stderr_ == 0.0);  // exact intrinsic volumes for box + ball
    CHECK(std::fabs(s.value - m.value) <= 3.0 * (s.stderr_ + m.stderr_));
    CHECK(std::fabs(s.value - r.value) <= 3.0 * (s.stderr_ + r.stderr_));
}

TEST_CASE("full-space integral of the gauge weight") {
    // int e^{-u(|x|_E)} dx = m_n^u vol(E), probed with K = {0}
    MCConfig cfg = test_cfg(300000);
    auto e = cube(2, -1.0, 1.0);
    auto u = p_power_weight(3.0);
    ValueWithError got = wills_mc(*point({0.0, 0.0}), *e, u, cfg);
    double want = moment(u, 2, cfg).value * 4.0;
    CHECK(std::fabs(got.value - want) <= 3.0 * got.stderr_);
}

TEST_CASE("truncation failure is reported") {
    MCConfig cfg = test_cfg(100000);
    cfg.s_max = 1.0;  // absurdly early cut, the tail bound dwarfs the noise
    CHECK_THROWS_AS(wills_mc(*cube(2, 0.0, 1.0), *ball(2, 1.0), classical_weight(), cfg),
                    TruncationDominates);
}

TEST_CASE("gaussian measure of disks and boxes") {
    MCConfig cfg = test_cfg(400000);
    double r = 1.5;
    ValueWithError g = gaussian_measure(*ball(2, r), {0.0, 0.0}, cfg);
    CHECK(std::fabs(g.value - (1.0 - std::exp(-r * r / 2.0))) <= 3.0 * g.stderr_);

    ValueWithError big = gaussian_measure(*cube(2, -8.0, 8.0), {0.0, 0.0}, cfg);
    CHECK(big.value == doctest::Approx(1.0).epsilon(1e-4));

    // one-sided interval in n=1 has measure 1/2
    ValueWithError half = gaussian_measure(*box({0.0}, {12.0}), {0.0}, cfg);
    CHECK(std::fabs(half.value - 0.5) <= 3.0 * half.stderr_);
}

TEST_CASE("gaussian sup at the center for symmetric bodies") {
    GaussianSupResult r = sup_gaussian(*ball(2, 1.0), test_cfg(300000));
    CHECK(r.flag == "assumed_symmetric_max");
    CHECK(std::fabs(r.value - (1.0 - std::exp(-0.5))) <= 3.0 * r.stderr_);
    CHECK(norm2(r.at) == 0.0);
}

TEST_CASE("gaussian sup search recenters a shifted disk") {
    GaussianSupResult r = sup_gaussian(*translate(ball(2, 1.0), {2.0, 0.0}), test_cfg(100000));
    CHECK(r.flag == "search_lower_bound");
    double centered = 1.0 - std::exp(-0.5);
    CHECK(r.value >= centered - 3.0 * r.stderr_ - 0.02);
    CHECK(std::fabs(r.at[0] + 2.0) < 0.3);
}
