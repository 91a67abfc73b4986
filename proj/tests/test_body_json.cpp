#include <cmath>

#include "doctest.h"
#include "wfl/body_json.hpp"
#include "wfl/errors.hpp"

using namespace wfl;

namespace {
// support values agree on 100 random directions to 1e-12
void check_same_body(const Body& a, const Body& b) {
    REQUIRE(a.dim == b.dim);
    SampleRng rng(11, 57, 0);
    for (int t = 0; t < 100; ++t) {
        Vec u(a.dim);
        for (double& x : u) x = rng.gaussian();
        double ha = support(a, u), hb = support(b, u);
        CHECK(std::fabs(ha - hb) <= 1e-12 * (1.0 + std::fabs(ha)));
    }
}
}  // namespace

TEST_CASE("simple kinds parse from JSON") {
    auto b = body_from_json(R"({"dim": 3, "kind": "ball", "radius": 2.0})");
    CHECK(b->dim == 3);
    CHECK(support(*b, {1.0, 0.0, 0.0}) == doctest::Approx(2.0));

    auto bx = body_from_json(R"({"dim": 2, "kind": "box", "lo": [0, -1], "hi": [1, 1]})");
    CHECK(support(*bx, {1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(support(*bx, {-1.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("composite kinds parse recursively") {
    auto k = body_from_json(R"({
      "dim": 2, "kind": "minkowski_sum",
      "a": {"dim": 2, "kind": "ball", "radius": 1.0},
      "b": {"dim": 2, "kind": "translate", "shift": [1.0, 0.0],
            "body": {"dim": 2, "kind": "box", "lo": [0, 0], "hi": [1, 1]}}
    })");
    CHECK(support(*k, {1.0, 0.0}) == doctest::Approx(3.0));
}

TEST_CASE("round trip preserves support values") {
    std::vector<BodyPtr> bodies = {
        ball(3, 1.5),
        cube(2, -1.0, 1.0),
        ellipsoid({1.0, 2.0, 0.5}),
        polytope_v({{0.0, 0.0}, {1.0, 0.0}, {0.5, 2.0}}),
        segment({0.0, 0.0}, {1.0, 3.0}),
        minkowski_sum(ball(2, 0.5), cube(2, 0.0, 1.0)),
        intersect(ball(2, 1.0), cube(2, -2.0, 0.5)),
        product(cube(1, 0.0, 1.0), ball(2, 1.0)),
        scale(translate(ball(2, 1.0), {0.5, 0.0}), 2.0),
        cross_polytope(3, 1.0),
    };
    for (const BodyPtr& b : bodies) {
        auto back = body_from_json(body_to_json(*b));
        check_same_body(*b, *back);
    }
}

TEST_CASE("linear image round trip") {
    Mat t(2, 2);
    t(0, 0) = 1.0;
    t(0, 1) = 0.5;
    t(1, 1) = 2.0;
    auto b = linear_image(cube(2, 0.0, 1.0), t);
    check_same_body(*b, *body_from_json(body_to_json(*b)));
}

TEST_CASE("malformed input throws InvalidBody") {
    CHECK_THROWS_AS(body_from_json("not json at all"), InvalidBody);
    CHECK_THROWS_AS(body_from_json(R"({"dim": 2, "kind": "dodecahedron"})"), InvalidBody);
    CHECK_THROWS_AS(body_from_json(R"({"dim": 2, "kind": "ball"})"), InvalidBody);
    CHECK_THROWS_AS(body_from_json(R"({"dim": 2, "kind": "ball", "radius": "big"})"), InvalidBody);
    CHECK_THROWS_AS(body_from_json_file("/no/such/file.json"), InvalidBody);
}

TEST_CASE("report serialization carries every column") {
    InequalityReport r;
    r.check_id = 7;
    r.name = "demo";
    r.inputs = "bodies=1";
    r.lhs = 1.0;
    r.rhs = 2.0;
    r.margin = 1.0;
    r.verdict = "holds";
    r.notes = "a note, with a comma";
    r.seed = 42;
    r.samples = 1000;
    std::string j = report_to_json(r);
    CHECK(j.find("\"check_id\": 7") != std::string::npos);
    CHECK(j.find("\"verdict\": \"holds\"") != std::string::npos);
    std::string row = report_to_csv_row(r);
    CHECK(row.find("\"a note, with a comma\"") != std::string::npos);
    CHECK(report_csv_header().find("uncertainty") != std::string::npos);
}
