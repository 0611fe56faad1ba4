#pragma once

#include <optional>
#include <span>

#include "affiq/bodies.hpp"

namespace affiq {

// One-dimensional fiber of a body along u over the base point y in u-perp.
struct ChordResult {
    double lower = 0.0;
    double upper = 0.0;
    Vec base;  // y

    double midpoint() const { return 0.5 * (lower + upper); }
    double length() const { return upper - lower; }
};

// Fiber { s : y + s u in b }; empty optional when the fiber misses the body.
std::optional<ChordResult> chord(const Body& b, const Vec& u, const Vec& y);

// Maximal shadow system K_u(t) sampled fiberwise: an inner V-approximation
// whose fibers sit at [t m(y) - l(y)/2, t m(y) + l(y)/2]. t = 0 is the Steiner
// symmetral, t = 1 reproduces K, t = -1 its reflection.
struct ShadowBody {
    VPolytope base;
    Vec direction;
    double t = 0.0;
    VPolytope body;  // hull-reduced vertex cloud
};

ShadowBody shadow_body(const VPolytope& b, const Vec& u, double t, int n_extra,
                       RngStream rng);

// Inner V-approximation of S_u K; equals shadow_body(..., t = 0, ...).body for
// the same rng, so t-profiles built from a common rng share base points.
VPolytope steiner_symmetral(const VPolytope& b, const Vec& u, int n_extra, RngStream rng);

// The family of fiber endpoint clouds over a fixed base-point set, evaluated
// at several t values from one chord pass. Every cloud comes from the same
// moving-point system, so monotonicity statements apply to the family itself.
std::vector<VPolytope> shadow_profile(const VPolytope& b, const Vec& u,
                                      std::span<const double> t_values, int n_extra,
                                      RngStream rng);

}  // namespace affiq
