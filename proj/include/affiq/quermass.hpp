#pragma once

#include <span>
#include <vector>

#include "affiq/bodies.hpp"
#include "affiq/estimate.hpp"
#include "affiq/grassmann.hpp"

namespace affiq {

// k-dimensional volume of P_F b. Exact: projected-vertex hull for V-polytopes,
// closed form for ellipsoids.
VolumeResult projection_volume(const Body& b, const Subspace& f);

struct QuermassSpec {
    int k = 1;
    double p = 1.0;
    bool log_mean = false;  // p = 0, geometric mean
    std::size_t budget = 200000;
};

// Per-sample |P_F b| over Haar F in G_{n,k}. The buffer is the shared-sample
// backbone: every Q_{k,p} for the same (body, k, seed) reuses it so that
// p-comparisons are exactly paired.
std::vector<double> shadow_samples(const Body& b, int k, std::size_t n_samples,
                                   const RngStream& rng, int threads = 1);

// Same Grassmannian sample driving both bodies (common random numbers).
void shadow_sample_pairs(const Body& a, const Body& b, int k, std::size_t n_samples,
                         const RngStream& rng, std::vector<double>& out_a,
                         std::vector<double>& out_b, int threads = 1);

// Q_{k,p} from a shadow-sample buffer.
MCEstimate q_kp_from_samples(std::span<const double> shadows, int n, int k, double p,
                             bool log_mean, std::uint64_t seed);

MCEstimate q_kp(const Body& b, const QuermassSpec& spec, const RngStream& rng,
                int threads = 1);

// Affine quermassintegral: Q_{k,-n}.
MCEstimate phi_k(const Body& b, int k, std::size_t budget, const RngStream& rng,
                 int threads = 1);

// Q_{k,p}(B) for the centered ball of volume `volume`: |B^n|^{(n-k)/n} vol^{k/n}.
double ball_quermass(int n, int k, double volume);

// I_{k,p} = Q_{k,p}(K) / Q_{k,p}(B_K); the volume estimate's error is folded
// into the standard error when |K| itself was Monte Carlo.
MCEstimate i_kp(const Body& b, int k, double p, bool log_mean, std::size_t budget,
                const RngStream& rng, int threads = 1);

struct SteinerFit {
    Vec w_hat;                       // fitted W_0..W_n
    std::vector<double> t_grid;
    std::vector<double> volumes;     // MC volume of K + tB per grid point
    std::vector<double> volume_errors;
};

// Fits |K + tB| = sum_k C(n,k) W_k t^{n-k} by least squares on MC volumes.
SteinerFit steiner_poly_fit(const VPolytope& b, std::span<const double> t_grid,
                            std::size_t budget, const RngStream& rng, int threads = 1);

// Gauge of the polar projection body: |x| * |P_{xhat-perp} b|.
double polar_projection_norm(const Body& b, const Vec& x);

// |Pi* b| = |B^n| * E_theta |P_{theta-perp} b|^{-n}.
MCEstimate polar_projection_volume(const Body& b, std::size_t budget, const RngStream& rng,
                                   int threads = 1);

}  // namespace affiq
