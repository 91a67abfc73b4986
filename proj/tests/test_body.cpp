#include <cmath>

#include "doctest.h"
#include "wfl/body.hpp"
#include "wfl/errors.hpp"

using namespace wfl;

TEST_CASE("support function of balls and cubes") {
    auto b = ball(3, 2.0);
    Vec u{1.0, 2.0, 2.0};
    CHECK(support(*b, u) == doctest::Approx(2.0 * 3.0));

    auto c = cube(4, -1.0, 1.0);
    Vec v{1.0, -2.0, 0.5, 3.0};
    CHECK(support(*c, v) == doctest::Approx(1.0 + 2.0 + 0.5 + 3.0));
}

TEST_CASE("support is additive under Minkowski sums") {
    auto k = polytope_v({{0.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}});
    auto e = ball(2, 0.5);
    auto s = minkowski_sum(k, e);
    Vec u{0.6, 0.8};
    CHECK(support(*s, u) == doctest::Approx(support(*k, u) + support(*e, u)));
    CHECK(dot(support_point(*s, u), u) == doctest::Approx(support(*s, u)));
}

TEST_CASE("support under scaling, negation, translation") {
    auto k = polytope_v({{1.0, 0.0}, {0.0, 3.0}, {-1.0, -1.0}});
    Vec u{0.3, -0.9};
    CHECK(support(*scale(k, 2.5), u) == doctest::Approx(2.5 * support(*k, u)));
    CHECK(support(*negate(k), u) == doctest::Approx(support(*k, -u)));
    Vec t{1.0, -2.0};
    CHECK(support(*translate(k, t), u) == doctest::Approx(support(*k, u) + dot(t, u)));
}

TEST_CASE("ellipsoid support and support points") {
    auto e = ellipsoid({1.0, 2.0, 3.0});
    Vec u{1.0, 1.0, 1.0};
    CHECK(support(*e, u) == doctest::Approx(std::sqrt(1.0 + 4.0 + 9.0)));
    Vec p = support_point(*e, u);
    CHECK(dot(p, u) == doctest::Approx(support(*e, u)));
    // support point lies on the boundary
    double q = 0;
    for (int i = 0; i < 3; ++i) {
        double a = i + 1.0;
        q += (p[i] / a) * (p[i] / a);
    }
    CHECK(q == doctest::Approx(1.0));
}

TEST_CASE("membership with tolerance") {
    auto b = ball(2, 1.0);
    CHECK(member(*b, {0.6, 0.6}));
    CHECK_FALSE(member(*b, {0.8, 0.8}));
    auto c = cube(3, 0.0, 1.0);
    CHECK(member(*c, {0.5, 0.0, 1.0}));
    CHECK_FALSE(member(*c, {0.5, 0.0, 1.1}));
}

TEST_CASE("euclidean distance closed forms") {
    auto b = ball(3, 1.0);
    CHECK(euclidean_distance(*b, {3.0, 0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(euclidean_distance(*b, {0.1, 0.1, 0.0}) == doctest::Approx(0.0));

    auto c = cube(2, -1.0, 1.0);
    CHECK(euclidean_distance(*c, {4.0, 5.0}) == doctest::Approx(5.0));  // (3,4) excess

    auto s = segment({0.0, 0.0}, {1.0, 0.0});
    CHECK(euclidean_distance(*s, {2.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(euclidean_distance(*s, {0.5, 2.0}) == doctest::Approx(2.0));
}

TEST_CASE("min-norm point to a convex hull matches hand values") {
    // triangle far from the query, nearest point on an edge
    std::vector<Vec> tri{{1.0, 1.0}, {3.0, 1.0}, {1.0, 3.0}};
    Vec p = nearest_point_convex_hull(tri, {0.0, 0.0});
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(1.0));

    Vec q = nearest_point_convex_hull(tri, {3.0, 3.0});
    CHECK(q[0] == doctest::Approx(2.0));
    CHECK(q[1] == doctest::Approx(2.0));

    // interior query projects to itself
    Vec r = nearest_point_convex_hull(tri, {1.5, 1.5});
    CHECK(r[0] == doctest::Approx(1.5));
    CHECK(r[1] == doctest::Approx(1.5));
}

TEST_CASE("distance to polytope, intersection and sum agree with geometry") {
    auto dia = cross_polytope(2, 1.0);
    // nearest point of the diamond to (1,1) is (1/2,1/2)
    CHECK(euclidean_distance(*dia, {1.0, 1.0}) == doctest::Approx(std::sqrt(0.5)));

    auto sum = minkowski_sum(dia, ball(2, 0.25));
    CHECK(euclidean_distance(*sum, {1.0, 1.0}) == doctest::Approx(std::sqrt(0.5) - 0.25));

    auto isec = intersect(cube(2, -1.0, 1.0), translate(cube(2, -1.0, 1.0), {1.0, 1.0}));
    // intersection is [0,1]^2
    CHECK(euclidean_distance(*isec, {-1.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(euclidean_distance(*isec, {2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("ellipsoid nearest point satisfies optimality") {
    auto e = ellipsoid({2.0, 1.0});
    Vec x{4.0, 0.0};
    Vec p = nearest_point(*e, x);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));

    Vec y{3.0, 3.0};
    Vec q = nearest_point(*e, y);
    // boundary and the residual is normal to the boundary there
    double on = (q[0] / 2.0) * (q[0] / 2.0) + q[1] * q[1];
    CHECK(on == doctest::Approx(1.0));
    Vec grad{q[0] / 2.0, 2.0 * q[1]};  // gradient of the quadratic, up to scale
    Vec res = y - q;
    double cosang = dot(grad, res) / (norm2(grad) * norm2(res));
    CHECK(cosang == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("h-polytope vertex enumeration and oracle agreement") {
    std::vector<Halfspace> hs;
    for (int i = 0; i < 3; ++i)
        for (double s : {1.0, -1.0}) {
            Vec n(3, 0.0);
            n[i] = s;
            hs.push_back({n, 1.0});
        }
    auto hc = polytope_h(3, hs);
    auto vs = vertices_of(*hc);
    REQUIRE(vs.has_value());
    CHECK(vs->size() == 8);
    Vec u{0.2, -0.5, 0.9};
    CHECK(support(*hc, u) == doctest::Approx(support(*cube(3, -1.0, 1.0), u)));
    CHECK(euclidean_distance(*hc, {2.0, 0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("unbounded h-polytope is rejected") {
    std::vector<Halfspace> hs{{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}};
    CHECK_THROWS_AS(polytope_h(2, hs), UnboundedBody);
}

TEST_CASE("gauge values for standard bodies") {
    CHECK(gauge_value(*ball(2, 2.0), {3.0, 4.0}) == doctest::Approx(2.5));
    CHECK(gauge_value(*cube(2, -1.0, 1.0), {0.5, -3.0}) == doctest::Approx(3.0));
    CHECK(gauge_value(*ellipsoid({2.0, 1.0}), {2.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
    // asymmetric box gauge
    CHECK(gauge_value(*box({-1.0}, {2.0}), {4.0}) == doctest::Approx(2.0));
    CHECK(gauge_value(*box({-1.0}, {2.0}), {-4.0}) == doctest::Approx(4.0));
    // generic bisection path (diamond)
    CHECK(gauge_value(*cross_polytope(2, 1.0), {0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gauge distance reduces to scaled euclidean for balls") {
    auto k = cube(2, -1.0, 1.0);
    auto e = ball(2, 2.0);
    CHECK(gauge_distance(*k, *e, {5.0, 1.0}) == doctest::Approx(2.0));
    CHECK(gauge_distance(*k, *e, {0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("gauge distance for box gauges and the dual fallback agree") {
    auto k = cube(2, -1.0, 1.0);
    auto e = cube(2, -1.0, 1.0);
    CHECK(gauge_distance(*k, *e, {3.0, 0.0}) == doctest::Approx(2.0));
    CHECK(gauge_distance(*k, *e, {3.0, 2.5}) == doctest::Approx(2.0));
    // diamond gauge forces the dual multi-start route
    auto dia = cross_polytope(2, 1.0);
    CHECK(gauge_distance(*k, *dia, {3.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(gauge_distance(*k, *dia, {2.0, 2.0}) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("circumradius exact and approximate") {
    CHECK(circumradius(*ball(3, 1.5)).value == doctest::Approx(1.5));
    CHECK(circumradius(*ball(3, 1.5)).exact);
    CHECK(circumradius(*cube(4, -1.0, 1.0)).value == doctest::Approx(2.0));
    CHECK(circumradius(*cross_polytope(3, 1.0)).value == doctest::Approx(1.0));
    CHECK(circumradius(*ellipsoid({1.0, 4.0})).value == doctest::Approx(4.0));
    auto blob = minkowski_sum(ellipsoid({1.0, 1.0, 2.0}), ball(3, 0.5));
    auto r = circumradius(*blob);
    CHECK_FALSE(r.exact);
    CHECK(r.value == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("bounding box from the support function") {
    auto k = translate(ball(2, 1.0), {3.0, -1.0});
    auto [lo, hi] = bounding_box(*k);
    CHECK(lo[0] == doctest::Approx(2.0));
    CHECK(hi[0] == doctest::Approx(4.0));
    CHECK(lo[1] == doctest::Approx(-2.0));
    CHECK(hi[1] == doctest::Approx(0.0));
}

TEST_CASE("projections of standard bodies") {
    Subspace h = Subspace::coordinate(3, {0, 1});
    auto pb = project_body(*ball(3, 2.0), h);
    CHECK(support(*pb, {1.0, 0.0}) == doctest::Approx(2.0));

    auto pc = project_body(*cube(3, -1.0, 2.0), h);
    CHECK(support(*pc, {1.0, 0.0}) == doctest::Approx(2.0));
    CHECK(support(*pc, {-1.0, 0.0}) == doctest::Approx(1.0));

    // shadow of an ellipsoid onto a tilted plane still has the right support
    auto e = ellipsoid({1.0, 2.0, 3.0});
    Subspace t = Subspace::hyperplane({1.0, 1.0, 1.0});
    auto pe = project_body(*e, t);
    Vec u{0.3, -0.7};
    Vec au = t.to_ambient(u);
    CHECK(support(*pe, u) == doctest::Approx(support(*e, au)));
}

TEST_CASE("sections of balls, boxes and ellipsoids") {
    // diagonal section of the unit ball through the origin is a unit disk
    Subspace h = Subspace::hyperplane({1.0, 1.0, 1.0});
    auto s = section_body(*ball(3, 1.0), h);
    CHECK(support(*s, {1.0, 0.0}) == doctest::Approx(1.0));

    // offset section shrinks the radius
    Vec off{0.6, 0.0, 0.0};
    Subspace hx = Subspace::hyperplane({1.0, 0.0, 0.0});
    auto s2 = section_body(*ball(3, 1.0), hx, off);
    CHECK(support(*s2, {1.0, 0.0}) == doctest::Approx(0.8));

    CHECK_THROWS_AS(section_body(*ball(3, 1.0), hx, {2.0, 0.0, 0.0}), EmptySection);

    // axis-aligned section of a box is a box-shaped polytope
    auto bs = section_body(*box({-1.0, -2.0, -3.0}, {1.0, 2.0, 3.0}), Subspace::coordinate(3, {0, 2}));
    CHECK(support(*bs, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(support(*bs, {0.0, 1.0}) == doctest::Approx(3.0));

    // section of a ball-shaped ellipsoid matches the ball section
    auto es = section_body(*ellipsoid({1.0, 1.0, 1.0}), hx, off);
    CHECK(support(*es, {1.0, 0.0}) == doctest::Approx(0.8));
    CHECK(support(*es, {0.0, -1.0}) == doctest::Approx(0.8));
}

TEST_CASE("sampled points are members") {
    SampleRng rng(3, 1, 0);
    auto bodies = {ball(3, 1.0), cube(3, -1.0, 2.0),
                   std::shared_ptr<const Body>(ellipsoid({1.0, 2.0, 0.5})),
                   polytope_v({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}})};
    for (const auto& k : bodies) {
        for (int i = 0; i < 50; ++i) {
            SampleRng r(3, 1, i);
            auto p = sample_point(*k, r);
            REQUIRE(p.has_value());
            CHECK(member(*k, *p, 1e-9));
        }
    }
}

TEST_CASE("symmetry detection") {
    CHECK(ball(2, 1.0)->symmetric);
    CHECK(cube(2, -1.0, 1.0)->symmetric);
    CHECK_FALSE(cube(2, 0.0, 1.0)->symmetric);
    CHECK(cross_polytope(3, 2.0)->symmetric);
    CHECK_FALSE(polytope_v({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})->symmetric);
}

TEST_CASE("origin interior requirement") {
    CHECK_NOTHROW(require_origin_interior(*ball(2, 1.0)));
    CHECK_THROWS_AS(require_origin_interior(*cube(2, 0.0, 1.0)), OriginNotInterior);
}
