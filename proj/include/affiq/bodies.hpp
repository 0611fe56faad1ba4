#pragma once

#include <functional>
#include <string>
#include <variant>

#include "affiq/hull.hpp"
#include "affiq/linalg.hpp"
#include "affiq/lp.hpp"
#include "affiq/rng.hpp"

namespace affiq {

// Convex body given by its vertex list (one vertex per row).
struct VPolytope {
    Mat vertices;  // m x n
    int dim() const { return static_cast<int>(vertices.cols()); }
    int count() const { return static_cast<int>(vertices.rows()); }
};

// Convex body { x : normals.row(i) . x <= offsets[i] }; bounded with interior.
struct HPolytope {
    Mat normals;  // r x n
    Vec offsets;  // r
    int dim() const { return static_cast<int>(normals.cols()); }
    int count() const { return static_cast<int>(normals.rows()); }
};

// { center + shape * v : |v| <= 1 } with invertible shape.
struct Ellipsoid {
    Vec center;
    Mat shape;
    Mat inv_shape;      // cached at construction
    double abs_det = 0.0;
    bool isotropic = false;  // shape == radius * I, exactly
    double radius = 0.0;     // meaningful when isotropic
    int dim() const { return static_cast<int>(center.size()); }
};

using Body = std::variant<VPolytope, HPolytope, Ellipsoid>;

int body_dim(const Body& b);
const char* body_kind(const Body& b);

// Validating constructors.
VPolytope make_vpolytope(Mat vertices);
HPolytope make_hpolytope(Mat normals, Vec offsets);
Ellipsoid make_ellipsoid(Vec center, Mat shape);

// h_b(x) = max_{y in b} <x, y>
double support(const Body& b, const Vec& x);
bool membership(const Body& b, const Vec& x);

// Polar body of a V-polytope with the origin strictly interior.
HPolytope polar(const VPolytope& p);

// K - K as a hull-reduced V-polytope.
VPolytope difference_body(const Body& b);

Body affine_image(const Body& b, const Mat& t, const Vec& shift);
Body reflect(const Body& b, const Vec& u);  // reflection about the hyperplane u-perp

// Euclidean distance from x to the polytope, by pairwise Frank-Wolfe over the
// vertex-weight simplex with a support-function certificate.
double distance_to_vpolytope(const VPolytope& p, const Vec& x, double tol = 1e-8);

// Membership oracle for the outer parallel body b + t * B_2^n.
std::function<bool(const Vec&)> minkowski_sum_ball(const Body& b, double t);

struct BodyParams {
    int m = 0;          // vertex count for random generators
    double radius = 1.0;
    Vec sides;          // box side lengths
    Vec center;         // ellipsoid center
    Mat shape;          // ellipsoid shape matrix
};

// Generators: cube, box, simplex, cross-polytope, random-poly, ball-polytope,
// ellipsoid, ball. Random kinds are deterministic given rng.
Body standard_body(const std::string& name, int n, const BodyParams& params, RngStream rng);
Body standard_body(const std::string& name, int n);

// Volume dispatch: exact hull volume for small V-polytopes, closed form for
// ellipsoids, Monte Carlo otherwise.
VolumeResult body_volume(const Body& b, std::size_t mc_budget, const RngStream& rng,
                         int threads = 1);

// Axis-aligned bounding box from support values.
void bounding_box(const Body& b, Vec& lo, Vec& hi);

// Radius of a ball inscribed at the vertex/center point; lower bound used as a
// heavy-tail sanity floor for negative-moment estimators.
double inscribed_radius(const Body& b);

}  // namespace affiq
