#include <doctest.h>

#include <random>

#include "affiq/hull.hpp"

#include "oracles.hpp"

using namespace affiq;

namespace {

std::vector<Vec> cube_corners(int n, double lo = 0.0, double hi = 1.0) {
    std::vector<Vec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(n);
        for (int j = 0; j < n; ++j) v[j] = (mask >> j & 1) ? hi : lo;
        pts.push_back(v);
    }
    return pts;
}

bool inside_all_facets(const HullResult& h, const Vec& x, double tol = 1e-9) {
    for (const auto& f : h.facets)
        if (f.normal.dot(x) > f.offset + tol) return false;
    return true;
}

Mat to_matrix(const std::vector<Vec>& pts) {
    Mat m(pts.size(), pts[0].size());
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(i) = pts[i].transpose();
    return m;
}

}  // namespace

TEST_CASE("hull: square corners plus center") {
    auto pts = cube_corners(2);
    pts.push_back(oracle::vec2(0.5, 0.5));
    const auto h = convex_hull(pts);
    CHECK(h.vertices.size() == 4);
    CHECK(volume_exact(h).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hull: unit ball volume constants") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
    CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("hull: cube corners in R^3") {
    const auto pts = cube_corners(3);
    const auto h = convex_hull(pts);
    CHECK(h.vertices.size() == 8);
    // every original corner appears among the vertices
    for (const auto& p : pts) {
        bool found = false;
        for (const auto& v : h.vertices)
            if ((v - p).norm() < 1e-12) found = true;
        CHECK(found);
    }
    CHECK(volume_exact(h).value == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& f : h.facets) {
        for (const auto& v : h.vertices) CHECK(f.normal.dot(v) <= f.offset + 1e-9);
        for (int idx : f.vertices)
            CHECK(std::abs(f.normal.dot(h.vertices[idx]) - f.offset) < 1e-9);
    }
}

TEST_CASE("hull: simplex and cross-polytope volumes") {
    std::vector<Vec> simplex = {oracle::vec3(0, 0, 0), oracle::vec3(1, 0, 0),
                                oracle::vec3(0, 1, 0), oracle::vec3(0, 0, 1)};
    CHECK(volume_exact(convex_hull(simplex)).value ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    std::vector<Vec> cross;
    for (int j = 0; j < 3; ++j)
        for (double s : {1.0, -1.0}) {
            Vec v = Vec::Zero(3);
            v[j] = s;
            cross.push_back(v);
        }
    CHECK(volume_exact(convex_hull(cross)).value ==
          doctest::Approx(oracle::cross_polytope_volume(3)).epsilon(1e-12));
}

TEST_CASE("hull: 4-d cube is exact") {
    const auto h = convex_hull(cube_corners(4));
    CHECK(h.vertices.size() == 16);
    CHECK(volume_exact(h).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hull_volume(to_matrix(cube_corners(4))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hull: disk cloud keeps its bounding square corners") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Vec> pts;
    while (pts.size() < 100) {
        const Vec p = oracle::vec2(unif(gen), unif(gen));
        if (p.norm() <= 1.0) pts.push_back(p);
    }
    for (const auto& c : cube_corners(2, -2.0, 2.0)) pts.push_back(c);
    const auto h = convex_hull(pts);
    CHECK(h.vertices.size() == 4);
    for (const auto& p : pts) CHECK(inside_all_facets(h, p));
}

TEST_CASE("hull: scaling and rotation invariance on random polytopes") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> normal;
    for (int d : {2, 3, 4}) {
        std::vector<Vec> pts;
        for (int i = 0; i < 3 * d + 4; ++i) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[j] = normal(gen);
            pts.push_back(v);
        }
        const double vol = hull_volume(to_matrix(pts));
        REQUIRE(vol > 0.0);
        for (double lam : {0.5, 2.0}) {
            std::vector<Vec> scaled;
            for (const auto& p : pts) scaled.push_back(lam * p);
            const double expected = std::pow(lam, d) * vol;
            CHECK(hull_volume(to_matrix(scaled)) ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
        const Mat rot = oracle::random_rotation(d, gen);
        std::vector<Vec> rotated;
        for (const auto& p : pts) rotated.push_back(rot * p);
        CHECK(hull_volume(to_matrix(rotated)) == doctest::Approx(vol).epsilon(1e-9));
    }
}

TEST_CASE("hull: containment is monotone") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> normal;
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) {
        Vec v(3);
        for (int j = 0; j < 3; ++j) v[j] = normal(gen);
        pts.push_back(v);
    }
    const double small = hull_volume(to_matrix(pts));
    std::vector<Vec> more = pts;
    for (int i = 0; i < 6; ++i) {
        Vec v(3);
        for (int j = 0; j < 3; ++j) v[j] = normal(gen);
        more.push_back(v);
    }
    CHECK(small <= hull_volume(to_matrix(more)) + 1e-12);
}

TEST_CASE("hull: canonical output is input-order independent") {
    std::mt19937_64 gen(77);
    std::normal_distribution<double> normal;
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) {
        Vec v(3);
        for (int j = 0; j < 3; ++j) v[j] = normal(gen);
        pts.push_back(v);
    }
    const auto a = convex_hull(pts);
    std::shuffle(pts.begin(), pts.end(), gen);
    const auto b = convex_hull(pts);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i)
        CHECK((a.vertices[i] - b.vertices[i]).norm() == 0.0);
}

TEST_CASE("hull: degenerate input raises") {
    std::vector<Vec> flat = {oracle::vec3(0, 0, 0), oracle::vec3(1, 0, 0),
                             oracle::vec3(0, 1, 0), oracle::vec3(1, 1, 0),
                             oracle::vec3(0.3, 0.4, 0)};
    CHECK_THROWS_AS((void)convex_hull(flat), Error);
}

TEST_CASE("hull: monte carlo ball volume") {
    const Vec lo = Vec::Constant(3, -1.0);
    const Vec hi = Vec::Constant(3, 1.0);
    const auto res = volume_mc([](const Vec& x) { return x.norm() <= 1.0; }, lo, hi, 1000000,
                               RngStream(3), 2);
    const double expected = 4.0 * M_PI / 3.0;
    CHECK(std::abs(res.value - expected) < 4.0 * res.std_error);
    CHECK(res.std_error < 0.01);
}

TEST_CASE("hull: monte carlo ellipsoid volume") {
    Mat m = Mat::Zero(3, 3);
    m.diagonal() << 1.0, 2.0, 3.0;
    const Mat inv = m.inverse();
    Vec lo(3), hi(3);
    lo << -1, -2, -3;
    hi << 1, 2, 3;
    const auto res = volume_mc([&](const Vec& x) { return (inv * x).norm() <= 1.0; }, lo, hi,
                               400000, RngStream(9), 2);
    CHECK(std::abs(res.value - 8.0 * M_PI) < 4.0 * res.std_error);
}

TEST_CASE("hull: cube in its own box has zero stderr") {
    const Vec lo = Vec::Zero(2), hi = Vec::Ones(2);
    const auto res =
        volume_mc([](const Vec&) { return true; }, lo, hi, 1000, RngStream(1), 1);
    CHECK(res.value == 1.0);
    CHECK(res.std_error == 0.0);
}

TEST_CASE("hull: exact and monte carlo volumes agree") {
    std::mt19937_64 gen(1234);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        const int d = trial % 2 == 0 ? 3 : 4;
        std::vector<Vec> pts;
        for (int i = 0; i < 4 * d; ++i) {
            Vec v(d);
            for (int j = 0; j < d; ++j) v[j] = normal(gen);
            pts.push_back(v);
        }
        const auto h = convex_hull(pts);
        const double exact = volume_exact(h).value;
        Vec lo = Vec::Constant(d, 1e30), hi = Vec::Constant(d, -1e30);
        for (const auto& p : pts) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        const auto mc = volume_mc([&](const Vec& x) { return inside_all_facets(h, x); }, lo,
                                  hi, 100000, RngStream(100 + trial), 2);
        CHECK(std::abs(exact - mc.value) <= 4.0 * mc.std_error);
    }
}

TEST_CASE("hull: 5-d cross polytope") {
    std::vector<Vec> cross;
    for (int j = 0; j < 5; ++j)
        for (double s : {1.0, -1.0}) {
            Vec v = Vec::Zero(5);
            v[j] = s;
            cross.push_back(v);
        }
    CHECK(hull_volume(to_matrix(cross)) ==
          doctest::Approx(oracle::cross_polytope_volume(5)).epsilon(1e-11));
}
