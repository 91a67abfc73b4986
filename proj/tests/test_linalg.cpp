#include "doctest.h"
#include "wfl/linalg.hpp"

using namespace wfl;

TEST_CASE("solve recovers a known solution") {
    Mat a(3, 3);
    double vals[9] = {4, 1, 0, 1, 3, -1, 0, -1, 2};
    for (int i = 0; i < 9; ++i) a.a[i] = vals[i];
    Vec x{1.0, -2.0, 0.5};
    Vec b = a.mul(x);
    Vec got = solve(a, b);
    for (int i = 0; i < 3; ++i) CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("solve throws on a singular matrix") {
    Mat a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 4;
    CHECK_THROWS_AS(solve(a, Vec{1.0, 1.0}), SingularSystem);
}

TEST_CASE("determinant of a triangular-ish matrix") {
    Mat a(3, 3);
    a(0, 0) = 2;
    a(1, 1) = 3;
    a(2, 2) = -4;
    a(0, 2) = 7;
    CHECK(det(a) == doctest::Approx(-24.0));
}

TEST_CASE("lstsq fits an exact overdetermined system") {
    // y = 2 + 3 t at four points
    Mat a(4, 2);
    Vec b(4);
    double t[4] = {0, 1, 2, 5};
    for (int i = 0; i < 4; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = t[i];
        b[i] = 2.0 + 3.0 * t[i];
    }
    Vec x = lstsq(a, b);
    CHECK(x[0] == doctest::Approx(2.0));
    CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("orthonormalize drops dependent vectors") {
    std::vector<Vec> rows{{1, 0, 0}, {1, 1, 0}, {2, 1, 0}};
    auto basis = orthonormalize(rows);
    REQUIRE(basis.size() == 2);
    CHECK(dot(basis[0], basis[1]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(norm2(basis[0]) == doctest::Approx(1.0));
    CHECK(norm2(basis[1]) == doctest::Approx(1.0));
}

TEST_CASE("cholesky factors and inverts") {
    Mat s(2, 2);
    s(0, 0) = 4;
    s(0, 1) = 2;
    s(1, 0) = 2;
    s(1, 1) = 3;
    Mat l = cholesky(s);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            double v = 0;
            for (std::size_t k = 0; k < 2; ++k) v += l(i, k) * l(j, k);
            CHECK(v == doctest::Approx(s(i, j)));
        }
    Mat inv = lower_inverse(l);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            double v = 0;
            for (std::size_t k = 0; k < 2; ++k) v += l(i, k) * inv(k, j);
            CHECK(v == doctest::Approx(i == j ? 1.0 : 0.0));
        }
}

TEST_CASE("binomial coefficients and factorials") {
    CHECK(binom(10, 5) == doctest::Approx(252.0));
    CHECK(binom(20, 10) == doctest::Approx(184756.0));
    CHECK(binom(5, -1) == 0.0);
    CHECK(binom(5, 6) == 0.0);
    CHECK(factorial(6) == doctest::Approx(720.0));
}
