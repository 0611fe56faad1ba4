#pragma once

#include "affiq/estimate.hpp"
#include "affiq/grassmann.hpp"
#include "affiq/quermass.hpp"

namespace affiq {

// Wedge projection volume |P_{E ^ x} K| = |P_{E-perp} x| * vol_k(P_{span(E,x)} K),
// with the k = 1 convention |P_x K| = |x| * length(P_{span(x)} K).
double wedge_volume(const Body& b, const Subspace& e, const Vec& x);

// Gauge of the E-projected polar body L_E(K) at x in E-perp; degree-1
// homogeneous, so it equals the wedge volume itself.
double le_gauge(const Body& b, const Subspace& e, const Vec& x);

// x in L_E(K)  <=>  wedge volume at most 1.
bool le_membership(const Body& b, const Subspace& e, const Vec& x);

// Two routes to |P_{E ^ x} K|: exact hull volume vs slice-wise quadrature of
// the fiber widths over w in P_E K (trapezoid + Richardson).
struct FubiniResult {
    double lhs = 0.0;
    double rhs = 0.0;
    int grid = 0;
};
FubiniResult fubini_check(const VPolytope& b, const Subspace& e, const Vec& x, int grid);

// |P_{x_1 ^ ... ^ x_k} T(A)| vs |P_{T* x_1 ^ ... ^ T* x_k} A|.
struct WedgeTransformResult {
    double lhs = 0.0;
    double rhs = 0.0;
};
WedgeTransformResult wedge_transform_check(const VPolytope& b, const Mat& t,
                                           const std::vector<Vec>& xs);

// Rolodex measure of L_{k,u}(K): split-sampled with the radial integral in
// closed form, so the estimator is
//   area(S^{n-k}) / n * E[ weight * |P_{span(E,theta)} K|^{-n} ].
MCEstimate mu_estimate(const Body& b, const Vec& u, int k, std::size_t n_samples,
                       const RngStream& rng, int threads = 1);

}  // namespace affiq
