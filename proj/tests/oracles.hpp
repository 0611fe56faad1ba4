// Test-only oracles, independent of the library implementation paths they
// check: brute-force 2-D hulls, rejection-sampled volumes, closed forms.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "affiq/linalg.hpp"

namespace oracle {

using affiq::Mat;
using affiq::Vec;

inline Vec vec2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

inline Vec vec3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

// Jarvis-march style brute hull: a point is extreme iff it is not a convex
// combination of the others, tested by exhaustive edge support in 2-D.
inline std::vector<Vec> brute_hull_2d(const std::vector<Vec>& pts) {
    const auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    sorted.erase(std::unique(sorted.begin(), sorted.end(),
                             [](const Vec& a, const Vec& b) { return (a - b).norm() < 1e-12; }),
                 sorted.end());
    if (sorted.size() < 3) return sorted;
    std::vector<Vec> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (std::size_t t = 0; t < sorted.size(); ++t) {
            const Vec& p = sorted[pass == 0 ? t : sorted.size() - 1 - t];
            while (hull.size() >= base + 2 &&
                   cross(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 1e-12)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
    }
    return hull;
}

inline double polygon_area(const std::vector<Vec>& ring) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Vec& a = ring[i];
        const Vec& b = ring[(i + 1) % ring.size()];
        acc += a[0] * b[1] - b[0] * a[1];
    }
    return std::abs(acc) / 2.0;
}

// cross-polytope in R^n has volume 2^n / n!
inline double cross_polytope_volume(int n) {
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= 2.0 / i;
    return v;
}

// |P_{theta-perp} [0,1]^n| = sum_i |theta_i| for unit theta
inline double cube_shadow(const Vec& theta) { return theta.cwiseAbs().sum(); }

// n-sphere point from a std::mt19937 (kept independent of affiq::RngStream)
inline Vec sphere_point(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    Vec v(n);
    double norm = 0.0;
    do {
        for (int i = 0; i < n; ++i) v[i] = normal(gen);
        norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
}

inline Mat random_rotation(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = normal(gen);
    const Mat q = affiq::qr_orthonormalize(g);
    Mat out = q;
    if (out.determinant() < 0.0) out.col(0) = -out.col(0);
    return out;
}

}  // namespace oracle
