#pragma once

#include <functional>
#include <vector>

#include "affiq/linalg.hpp"
#include "affiq/rng.hpp"

namespace affiq {

// Volume of the unit Euclidean ball in R^k (exact half-integer gamma recursion).
double unit_ball_volume(int k);
// Surface area of the unit sphere S^{n-1} in R^n.
double sphere_surface_area(int n);

struct HullFacet {
    std::vector<int> vertices;  // indices into HullResult::vertices, ascending
    Vec normal;                 // outward unit normal
    double offset;              // <normal, x> = offset on the facet
};

struct HullResult {
    int dim = 0;
    std::vector<Vec> vertices;  // extreme points, lexicographically sorted
    std::vector<HullFacet> facets;
};

// Convex hull of full-dimensional point sets in dimension 1..6. Output is
// canonical (independent of input order). Throws DegenerateInput when the
// points do not span their ambient dimension.
HullResult convex_hull(const std::vector<Vec>& points);

// Extreme points of conv(points); same canonical ordering.
std::vector<Vec> hull_reduce(const std::vector<Vec>& points);

enum class VolumeMethod { Exact, MonteCarlo };

struct VolumeResult {
    double value = 0.0;
    VolumeMethod method = VolumeMethod::Exact;
    double std_error = 0.0;
};

// Exact volume by fan triangulation from the vertex centroid.
VolumeResult volume_exact(const HullResult& h);

// Hot path: volume of conv(rows of pts) without materializing a HullResult.
// pts is m x d with d in 1..6.
double hull_volume(const Mat& pts);

// Hit-or-miss volume estimate over the box [lo, hi]; deterministic given rng.
VolumeResult volume_mc(const std::function<bool(const Vec&)>& member, const Vec& lo,
                       const Vec& hi, std::size_t n_samples, const RngStream& rng,
                       int threads = 1);

}  // namespace affiq
