#include <cmath>

#include "doctest.h"
#include "wfl/checks.hpp"
#include "wfl/errors.hpp"

using namespace wfl;

namespace {
const double kPi = 3.14159265358979323846;

MCConfig test_cfg(std::uint64_t samples = 100000) {
    MCConfig cfg;
    cfg.samples = samples;
    cfg.seed = 17;
    return cfg;
}
}  // namespace

TEST_CASE("registry lists 32 entries with unique ids and names") {
    const auto& reg = check_registry();
    CHECK(reg.size() == 32);
    for (std::size_t i = 0; i < reg.size(); ++i) {
        CHECK(reg[i].id == int(i) + 1);
        for (std::size_t j = i + 1; j < reg.size(); ++j)
            CHECK(std::string(reg[i].name) != reg[j].name);
    }
}

TEST_CASE("closed-form ball wills values") {
    CHECK(ball_wills(2, 1.0) == doctest::Approx(1.0 + 2.0 * kPi).epsilon(1e-12));
    double r = 0.7;
    CHECK(ball_wills(2, r) == doctest::Approx(1.0 + kPi * r + kPi * r * r).epsilon(1e-12));
    // cube-free cross check in 1d: W([-r, r]) = 1 + 2r
    CHECK(ball_wills(1, r) == doctest::Approx(1.0 + 2.0 * r).epsilon(1e-12));
}

TEST_CASE("phi coefficients at a = 0.91 are positive with tiny residuals") {
    PhiSolution s = solve_phi(0.91);
    CHECK(s.a1 > 0.0);
    CHECK(s.a2 > 0.0);
    CHECK(s.a3 > 0.0);
    for (double r : s.residuals) CHECK(std::fabs(r) < 1e-10);
}

TEST_CASE("phi closed form agrees with the linear solve across random a") {
    SampleRng rng(5, 77, 0);
    for (int t = 0; t < 20; ++t) {
        double a = rng.uniform(0.5, 1.5);
        // solve_phi throws if the two routes disagree beyond 1e-10
        PhiSolution s = solve_phi(a);
        for (double r : s.residuals) CHECK(std::fabs(r) < 1e-10);
    }
}

TEST_CASE("gaussian upper constants") {
    CHECK(gaussian_upper_constant(2) == 6.0);
    CHECK(gaussian_upper_constant(3) == 20.0);
    for (int n = 4; n <= 20; ++n)
        CHECK(gaussian_upper_constant(n) == doctest::Approx(std::pow(8.0, n / 2.0)).epsilon(1e-12));
}

TEST_CASE("ball midpoint counterexample is violated exactly in dimensions 2-6") {
    CheckInputs in;
    MCConfig cfg = test_cfg(1000);
    InequalityReport r = run_check(12, in, cfg);
    CHECK(r.verdict == "violated");
    CHECK(r.expected_violated);
    CHECK(r.margin < 0.0);
    // n = 2 by hand: sqrt(1 + 3.75 pi) vs the radius 1 and 2 average
    in.dim = 2;
    InequalityReport r2 = run_check(12, in, cfg);
    double mid = std::sqrt(1.0 + 3.75 * kPi);
    double avg = 0.5 * (std::sqrt(1.0 + 2.0 * kPi) + std::sqrt(1.0 + 6.0 * kPi));
    CHECK(r2.rhs == doctest::Approx(mid).epsilon(1e-12));
    CHECK(r2.lhs == doctest::Approx(avg).epsilon(1e-12));
    CHECK(r2.margin == doctest::Approx(mid - avg).epsilon(1e-9));
}

TEST_CASE("additive ball counterexample matches the planar numbers") {
    CheckInputs in;
    in.dim = 2;
    InequalityReport r = run_check(13, in, test_cfg(1000));
    CHECK(r.verdict == "violated");
    CHECK(r.rhs == doctest::Approx(std::sqrt(1.0 + 3.0 * kPi + 9.0 * kPi)).epsilon(1e-12));
    CHECK(r.lhs ==
          doctest::Approx(std::sqrt(1.0 + 2.0 * kPi) + std::sqrt(1.0 + 2.0 * kPi + 4.0 * kPi))
              .epsilon(1e-12));
    CHECK(r.rhs < r.lhs);
}

TEST_CASE("small-ball counterexample is violated for n = 3..6") {
    InequalityReport r = run_check(14, CheckInputs{}, test_cfg(1000));
    CHECK(r.verdict == "violated");
    CHECK(r.margin < 0.0);
}

TEST_CASE("cube remark in dimension 10 reproduces the exact branch values") {
    InequalityReport r = run_check(19, CheckInputs{}, test_cfg(1000));
    CHECK(r.verdict == "holds");
    double b = 1024.0 * std::pow(1.0 + 1.0 / std::sqrt(2.0), 10.0);
    CHECK(r.lhs == doctest::Approx(b).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(252.0 * 1024.0).epsilon(1e-12));
}

TEST_CASE("half-cube difference remark flips between dimensions 3 and 9") {
    InequalityReport r = run_check(23, CheckInputs{}, test_cfg(1000));
    CHECK(r.verdict == "holds");
    CHECK(r.lhs == doctest::Approx(std::pow(4.0, 9)).epsilon(1e-12));
    double b9 = binom(18, 9) / std::pow(2.0, 4.5) * std::pow(1.0 + 1.0 / std::sqrt(2.0), 9.0);
    CHECK(r.rhs == doctest::Approx(b9).epsilon(1e-9));
    CHECK(r.lhs < r.rhs);
}

TEST_CASE("ball derivative identity holds exactly") {
    for (int n : {2, 3, 5, 8}) {
        CheckInputs in;
        in.dim = n;
        InequalityReport r = run_check(27, in, test_cfg(1000));
        CHECK(r.verdict == "holds");
        CHECK(r.lhs <= r.uncertainty);
    }
}

TEST_CASE("two-sided exponential bound holds on the unit disk") {
    CheckInputs in;
    in.bodies = {ball(2, 1.0)};
    InequalityReport r = run_check(1, in, test_cfg());
    // lower bound is tight: e^{pi - pi} = 1 vs W = 1 + 2 pi + ... margin > 0
    CHECK(r.verdict == "holds");
}

TEST_CASE("volume sandwich and gaussian bound hold on a centered cube") {
    CheckInputs in;
    in.bodies = {cube(2, -1.0, 1.0)};
    CHECK(run_check(2, in, test_cfg()).verdict == "holds");
    CHECK(run_check(3, in, test_cfg()).verdict == "holds");
}

TEST_CASE("brunn-minkowski style entries hold on a planar pair") {
    CheckInputs in;
    in.bodies = {ball(2, 1.0), cube(2, -1.0, 1.0)};
    MCConfig cfg = test_cfg();
    CHECK(run_check(9, in, cfg).verdict == "holds");
    CHECK(run_check(11, in, cfg).verdict == "holds");
    CHECK(run_check(20, in, cfg).verdict == "holds");
}

TEST_CASE("projection and difference-body entries hold on a shifted square") {
    CheckInputs in;
    in.bodies = {cube(3, 0.0, 1.0)};
    MCConfig cfg = test_cfg();
    CHECK(run_check(16, in, cfg).verdict == "holds");
    CHECK(run_check(21, in, cfg).verdict == "holds");
    CHECK(run_check(22, in, cfg).verdict == "holds");
}

TEST_CASE("orthogonal product identity") {
    CheckInputs in;
    in.bodies = {cube(1, 0.0, 2.0), ball(2, 1.0)};
    InequalityReport r = run_check(25, in, test_cfg());
    CHECK(r.verdict == "holds");
    // W([0,2]) W(B) = 3 (1 + pi + pi)
    CHECK(r.lhs == doctest::Approx(3.0 * (1.0 + 2.0 * kPi)).epsilon(1e-9));
}

TEST_CASE("gaussian mean width identity on a ball") {
    CheckInputs in;
    in.bodies = {ball(3, 1.0)};
    InequalityReport r = run_check(30, in, test_cfg(400000));
    CHECK(r.verdict == "holds");
    // V_1(B_2^3) = 3 kappa_3 / kappa_2 = 4, so the gaussian mean is 4/sqrt(2 pi)
    CHECK(r.rhs == doctest::Approx(4.0 / std::sqrt(2.0 * kPi)).epsilon(1e-9));
}

TEST_CASE("informational entries report ratios without a verdict") {
    CheckInputs in;
    in.bodies = {ball(2, 1.0), cube(2, -1.0, 1.0)};
    InequalityReport r = run_check(31, in, test_cfg());
    CHECK(r.verdict == "informational");
    CHECK(r.lhs > 0.0);
    CHECK(r.lhs < 1.0);
    CheckInputs in2;
    in2.bodies = {cube(2, 0.0, 1.0)};
    InequalityReport r2 = run_check(32, in2, test_cfg());
    CHECK(r2.verdict == "informational");
    CHECK(r2.lhs > 0.0);
}

TEST_CASE("lookup by name and the error paths") {
    CheckInputs in;
    in.bodies = {ball(2, 1.0)};
    InequalityReport r = run_check("mcmullen_two_sided", in, test_cfg());
    CHECK(r.check_id == 1);
    CHECK_THROWS_AS(run_check(99, in, test_cfg()), UnknownCheck);
    CHECK_THROWS_AS(run_check("no_such_check", in, test_cfg()), UnknownCheck);
    CHECK_THROWS_AS(run_check(1, CheckInputs{}, test_cfg()), MissingInput);
    CHECK_THROWS_AS(run_check(1, in, test_cfg(10)), MissingInput);
}

TEST_CASE("evaluation errors demote to inconclusive instead of crashing") {
    CheckInputs in;
    // a point body has zero volume, entry 7 cannot find its root
    in.bodies = {point(Vec{0.0, 0.0})};
    InequalityReport r = run_check(7, in, test_cfg());
    CHECK(r.verdict == "inconclusive");
}
