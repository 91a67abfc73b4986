#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "wfl/linalg.hpp"
#include "wfl/rng.hpp"
#include "wfl/subspace.hpp"

namespace wfl {

struct Body;
using BodyPtr = std::shared_ptr<const Body>;

// Constructive body kinds. Origin-centered where a center is implied
// (Ball, Ellipsoid); use Translate to move them.
struct BallK {
    double radius;
};
struct BoxK {
    Vec lo, hi;
};
struct EllipsoidK {
    Vec semi_axes;
};
struct PolytopeVK {
    std::vector<Vec> vertices;
};
struct Halfspace {
    Vec normal;
    double offset;  // <normal, x> <= offset
};
struct PolytopeHK {
    std::vector<Halfspace> halfspaces;
    std::vector<Vec> vertex_cache;  // filled at construction when dim <= 4
};
struct SegmentK {
    Vec a, b;
};
struct PointK {
    Vec location;
};
struct ScaleK {
    BodyPtr body;
    double factor;
};
struct NegateK {
    BodyPtr body;
};
struct TranslateK {
    BodyPtr body;
    Vec shift;
};
struct MinkowskiSumK {
    BodyPtr a, b;
};
struct IntersectionK {
    BodyPtr a, b;
};
struct ProductK {
    BodyPtr a, b;  // orthogonal product, a in the leading coordinates
};
struct LinearImageK {
    BodyPtr body;
    Mat T;          // n x n
    bool orthogonal;
    double absdet;
};
// Internal kind: orthogonal projection of a body onto a subspace,
// represented through its support oracle (h(u) = h_body(B^T u)).
struct ProjectedK {
    BodyPtr body;
    Subspace onto;
};

using BodyKind = std::variant<BallK, BoxK, EllipsoidK, PolytopeVK, PolytopeHK, SegmentK, PointK,
                              ScaleK, NegateK, TranslateK, MinkowskiSumK, IntersectionK, ProductK,
                              LinearImageK, ProjectedK>;

struct Body {
    int dim = 0;
    bool symmetric = false;  // provably 0-symmetric by construction
    BodyKind kind;
};

// Factories (with structural simplification of the clear-win cases).
BodyPtr ball(int n, double radius);
BodyPtr box(Vec lo, Vec hi);
BodyPtr cube(int n, double lo = 0.0, double hi = 1.0);
BodyPtr ellipsoid(Vec semi_axes);
BodyPtr polytope_v(std::vector<Vec> vertices);
BodyPtr polytope_h(int n, std::vector<Halfspace> halfspaces);
BodyPtr segment(Vec a, Vec b);
BodyPtr point(Vec location);
BodyPtr scale(BodyPtr k, double factor);
BodyPtr negate(BodyPtr k);
BodyPtr translate(BodyPtr k, Vec shift);
BodyPtr minkowski_sum(BodyPtr a, BodyPtr b);
BodyPtr intersect(BodyPtr a, BodyPtr b);
BodyPtr product(BodyPtr a, BodyPtr b);
BodyPtr linear_image(BodyPtr k, Mat t);
BodyPtr cross_polytope(int n, double radius);  // radius * B_1^n

/// Convex combination (1-lambda) K + lambda L as a Minkowski sum.
BodyPtr convex_combination(BodyPtr k, BodyPtr l, double lambda);

// Geometric oracles. All are pure and re-entrant.
double support(const Body& k, const Vec& u);
Vec support_point(const Body& k, const Vec& u);
bool member(const Body& k, const Vec& x, double tol = 1e-9);
double euclidean_distance(const Body& k, const Vec& x);
Vec nearest_point(const Body& k, const Vec& x);

double gauge_value(const Body& e, const Vec& x);
double gauge_distance(const Body& k, const Body& e, const Vec& x);

struct CircumradiusResult {
    double value;
    bool exact;
};
CircumradiusResult circumradius(const Body& k);

/// Axis-aligned bounding box [-h(-e_i), h(e_i)].
std::pair<Vec, Vec> bounding_box(const Body& k);

BodyPtr project_body(const Body& k, const Subspace& h);
/// Section {y in H-coords : B y + offset in K}. offset defaults to 0.
BodyPtr section_body(const Body& k, const Subspace& h, const Vec& offset);
BodyPtr section_body(const Body& k, const Subspace& h);

/// Random point of K for kinds with a sampler (Ball, Box, PolytopeV and
/// wrappers); nullopt otherwise. Not uniform for PolytopeV.
std::optional<Vec> sample_point(const Body& k, SampleRng& rng);

/// Vertices of K when it is (structurally) a polytope; nullopt otherwise.
std::optional<std::vector<Vec>> vertices_of(const Body& k);

/// Min-norm-point distance from x to conv(points) (Wolfe's algorithm).
/// Returns the nearest point.
Vec nearest_point_convex_hull(const std::vector<Vec>& points, const Vec& x);

/// Requires 0 in int E (throws OriginNotInterior otherwise).
void require_origin_interior(const Body& e);

/// Facets of conv(vertices) by brute force over vertex subsets. Exact but
/// exponential; meant for small dimensions and vertex counts.
std::vector<Halfspace> facet_halfspaces(int n, const std::vector<Vec>& vertices);

/// Counterclockwise convex hull of planar points (Andrew monotone chain).
std::vector<Vec> convex_hull_2d(std::vector<Vec> points);

}  // namespace wfl
