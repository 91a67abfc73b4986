#include <cmath>

#include "doctest.h"
#include "wfl/errors.hpp"
#include "wfl/steiner.hpp"

using namespace wfl;

namespace {
const double kPi = 3.14159265358979323846;

MCConfig test_cfg(std::uint64_t samples = 200000) {
    MCConfig cfg;
    cfg.samples = samples;
    cfg.seed = 7;
    return cfg;
}
}  // namespace

TEST_CASE("unit ball volumes") {
    CHECK(kappa(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kappa(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(kappa(2) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(kappa(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(kappa(10) == doctest::Approx(2.550164039877345).epsilon(1e-14));
    CHECK(kappa(50) == doctest::Approx(1.7302192458361097e-13).epsilon(1e-13));
}

TEST_CASE("exact volumes of standard bodies") {
    CHECK(*exact_volume(*ball(3, 2.0)) == doctest::Approx(kappa(3) * 8.0));
    CHECK(*exact_volume(*box({0.0, -1.0}, {2.0, 3.0})) == doctest::Approx(8.0));
    CHECK(*exact_volume(*ellipsoid({1.0, 2.0, 3.0})) == doctest::Approx(kappa(3) * 6.0));
    // unit simplex in R^3
    auto simplex = polytope_v({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    CHECK(*exact_volume(*simplex) == doctest::Approx(1.0 / 6.0));
    CHECK(*exact_volume(*cross_polytope(3, 1.0)) == doctest::Approx(4.0 / 3.0));
    CHECK(*exact_volume(*cross_polytope(2, 2.0)) == doctest::Approx(8.0));
    // 4-d cross polytope, 2^4/4!
    CHECK(*exact_volume(*cross_polytope(4, 1.0)) == doctest::Approx(16.0 / 24.0));
}

TEST_CASE("monte carlo volume agrees with closed forms") {
    ValueWithError mc = volume(*intersect(cross_polytope(3, 1.0), cube(3, 0.0, 1.0)), test_cfg());
    // first octant piece of the diamond, volume (4/3)/8
    CHECK(std::fabs(mc.value - 1.0 / 6.0) <= 3.0 * mc.stderr_);
    CHECK(mc.stderr_ > 0.0);
}

TEST_CASE("intrinsic volumes of balls and cubes") {
    // V_i(r B_2^n) = binom(n,i) kappa_n / kappa_{n-i} r^i
    auto vb = intrinsic_volumes(*ball(3, 2.0), test_cfg());
    CHECK(vb.exact);
    for (int i = 0; i <= 3; ++i)
        CHECK(vb.v[i] == doctest::Approx(binom(3, i) * kappa(3) / kappa(3 - i) * std::pow(2.0, i)));

    auto vc = intrinsic_volumes(*cube(4, 0.0, 1.0), test_cfg());
    CHECK(vc.exact);
    for (int i = 0; i <= 4; ++i) CHECK(vc.v[i] == doctest::Approx(binom(4, i)));

    auto vp = intrinsic_volumes(*point({0.0, 0.0, 0.0}), test_cfg());
    CHECK(vp.v[0] == doctest::Approx(1.0));
    CHECK(vp.v[1] == doctest::Approx(0.0));
    CHECK(vp.v[3] == doctest::Approx(0.0));
}

TEST_CASE("products convolve intrinsic volume sequences") {
    auto a = cube(2, 0.0, 1.0);
    auto b = box({0.0, 0.0, 0.0}, {2.0, 2.0, 2.0});
    auto prod = product(a, b);
    auto va = *exact_intrinsic_volumes(*a);
    auto vb = *exact_intrinsic_volumes(*b);
    auto vp = *exact_intrinsic_volumes(*prod);
    for (int k = 0; k <= 5; ++k) {
        double conv = 0.0;
        for (int i = 0; i <= 2; ++i)
            if (k - i >= 0 && k - i <= 3) conv += va[i] * vb[k - i];
        CHECK(vp[k] == doctest::Approx(conv));
    }
}

TEST_CASE("outer parallel bodies have exact intrinsic volumes") {
    // rounded unit square: half perimeter and area have closed forms
    auto k = minkowski_sum(cube(2, 0.0, 1.0), ball(2, 0.5));
    auto v = exact_intrinsic_volumes(*k);
    REQUIRE(v.has_value());
    CHECK((*v)[0] == doctest::Approx(1.0));
    CHECK((*v)[1] == doctest::Approx(2.0 + kPi * 0.5));        // half perimeter
    CHECK((*v)[2] == doctest::Approx(1.0 + 4.0 * 0.5 + kPi * 0.25));  // area
}

TEST_CASE("planar polygons get exact intrinsic volumes") {
    auto tri = polytope_v({{0.0, 0.0}, {3.0, 0.0}, {0.0, 4.0}});
    auto v = exact_intrinsic_volumes(*tri);
    REQUIRE(v.has_value());
    CHECK((*v)[0] == doctest::Approx(1.0));
    CHECK((*v)[1] == doctest::Approx(6.0));  // perimeter 12
    CHECK((*v)[2] == doctest::Approx(6.0));
}

TEST_CASE("relative Steiner closed forms") {
    // two boxes: vol(K + tE) = prod(a_i + b_i t)
    auto k = box({0.0, 0.0}, {2.0, 3.0});
    auto e = cube(2, -1.0, 1.0);
    auto w = exact_relative_steiner(*k, *e);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == doctest::Approx(6.0));
    CHECK((*w)[1] == doctest::Approx((2.0 * 2.0 + 3.0 * 2.0) / 2.0));
    CHECK((*w)[2] == doctest::Approx(4.0));

    // symmetry W_i(B;E) = W_{n-i}(E;B)
    auto wb = exact_relative_steiner(*ball(2, 1.0), *e);
    auto we = exact_relative_steiner(*e, *ball(2, 1.0));
    REQUIRE(wb.has_value());
    REQUIRE(we.has_value());
    for (int i = 0; i <= 2; ++i) CHECK((*wb)[i] == doctest::Approx((*we)[2 - i]));
}

TEST_CASE("steiner fit recovers disk and square coefficients") {
    // vol(B + tB) = pi (1+t)^2, so W = (pi, pi, pi)
    auto sc = steiner_fit(*ball(2, 1.0), *ball(2, 1.0), test_cfg(400000));
    CHECK(sc.method == "mc_fit");
    for (int i = 0; i <= 2; ++i) {
        CHECK(std::fabs(sc.W[i] - kPi) <= 3.0 * sc.stderr_[i]);
        CHECK(sc.stderr_[i] > 0.0);
    }

    // vol([0,1]^2 + tB) = 1 + 4t + pi t^2, W = (1, 2, pi)
    auto sq = steiner_fit(*cube(2, 0.0, 1.0), *ball(2, 1.0), test_cfg(400000));
    Vec want{1.0, 2.0, kPi};
    for (int i = 0; i <= 2; ++i) CHECK(std::fabs(sq.W[i] - want[i]) <= 3.0 * sq.stderr_[i]);
}

TEST_CASE("steiner fit matches closed forms for ball and box pairs") {
    struct Pair {
        BodyPtr k, e;
    };
    std::vector<Pair> pairs{{ball(3, 1.0), ball(3, 1.0)},
                            {cube(3, -0.5, 0.5), ball(3, 1.0)},
                            {ball(2, 2.0), cube(2, -1.0, 1.0)},
                            {box({0.0, 0.0, 0.0}, {1.0, 2.0, 1.0}), cube(3, -1.0, 1.0)}};
    for (const auto& pr : pairs) {
        auto exact = exact_relative_steiner(*pr.k, *pr.e);
        REQUIRE(exact.has_value());
        auto fit = steiner_fit(*pr.k, *pr.e, test_cfg(300000));
        for (std::size_t i = 0; i < exact->size(); ++i)
            CHECK(std::fabs(fit.W[i] - (*exact)[i]) <= 3.0 * fit.stderr_[i] + 1e-9);
    }
}

TEST_CASE("steiner fit handles degenerate bodies") {
    // segment of length 2 in the plane: area(S + tB) = 4t + pi t^2
    auto s = segment({0.0, 0.0}, {2.0, 0.0});
    auto fit = steiner_fit(*s, *ball(2, 1.0), test_cfg(300000));
    CHECK(std::fabs(fit.W[0] - 0.0) <= 3.0 * fit.stderr_[0] + 1e-9);
    CHECK(std::fabs(fit.W[1] - 2.0) <= 3.0 * fit.stderr_[1]);
    CHECK(std::fabs(fit.W[2] - kPi) <= 3.0 * fit.stderr_[2]);
}

TEST_CASE("mean width values") {
    // V1(rB^2) = pi r
    CHECK(mean_width_V1(*ball(2, 2.0), test_cfg()).value == doctest::Approx(2.0 * kPi));
    CHECK(mean_width_V1(*ball(2, 3.0), test_cfg()).value == doctest::Approx(3.0 * kPi));
    CHECK(mean_width_V1(*box({0.0, 0.0, 0.0}, {1.0, 2.0, 4.0}), test_cfg()).value ==
          doctest::Approx(7.0));
    CHECK(mean_width_V1(*point({1.0, 1.0}), test_cfg()).value == doctest::Approx(0.0));

    // MC path for a body without closed-form intrinsic volumes
    auto blob = intersect(ball(2, 1.0), cube(2, 0.0, 2.0));
    auto v1 = mean_width_V1(*blob, test_cfg());
    CHECK(v1.stderr_ > 0.0);
    // quarter disk: V1 = perimeter/2 = (2 + pi/2)/2
    CHECK(std::fabs(v1.value - (2.0 + kPi / 2.0) / 2.0) <= 3.0 * v1.stderr_ + 1e-3);
}
