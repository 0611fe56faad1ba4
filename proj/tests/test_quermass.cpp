#include <doctest.h>

#include <random>

#include "affiq/quermass.hpp"

#include "oracles.hpp"

using namespace affiq;

namespace {

Subspace axis_plane(int n, int skip) {
    Mat frame(n, n - 1);
    int c = 0;
    for (int j = 0; j < n; ++j) {
        if (j == skip) continue;
        frame.col(c) = Vec::Zero(n);
        frame(j, c) = 1.0;
        ++c;
    }
    return Subspace::from_frame(frame);
}

}  // namespace

TEST_CASE("projection volume: axis shadows of the cube") {
    const Body cube = standard_body("cube", 3);
    for (int skip = 0; skip < 3; ++skip)
        CHECK(projection_volume(cube, axis_plane(3, skip)).value ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projection volume: cube shadows match the facet formula") {
    // |P_{theta-perp} [0,1]^n| = sum |theta_i|
    std::mt19937_64 gen(1);
    for (int n : {3, 4}) {
        const Body cube = standard_body("cube", n);
        for (int i = 0; i < 100; ++i) {
            const Vec theta = oracle::sphere_point(n, gen);
            const auto f = Subspace::from_frame(complement_basis(theta));
            CHECK(projection_volume(cube, f).value ==
                  doctest::Approx(oracle::cube_shadow(theta)).epsilon(1e-9));
        }
    }
}

TEST_CASE("projection volume: balls have constant shadows") {
    RngStream rng(2);
    for (double r : {0.5, 1.0, 2.0}) {
        const Body ball = standard_body("ball", 3, BodyParams{.radius = r}, RngStream(0));
        for (int k : {1, 2, 3}) {
            const auto f = sample_grassmannian(3, k, rng);
            CHECK(projection_volume(ball, f).value ==
                  doctest::Approx(unit_ball_volume(k) * std::pow(r, k)).epsilon(1e-14));
        }
    }
}

TEST_CASE("q_kp on balls is exact with zero variance") {
    const Body ball = standard_body("ball", 3, BodyParams{.radius = 1.7}, RngStream(0));
    for (int k : {1, 2}) {
        for (double p : {1.0, -1.0, -3.0}) {
            const auto est = q_kp(ball, QuermassSpec{k, p, false, 2000}, RngStream(3), 2);
            CHECK(est.value ==
                  doctest::Approx(unit_ball_volume(3) * std::pow(1.7, k)).epsilon(1e-12));
            CHECK(est.std_error == 0.0);
        }
        const auto log_est = q_kp(ball, QuermassSpec{k, 0.0, true, 2000}, RngStream(3), 2);
        CHECK(log_est.value ==
              doctest::Approx(unit_ball_volume(3) * std::pow(1.7, k)).epsilon(1e-12));
        CHECK(log_est.std_error == 0.0);
    }
}

TEST_CASE("i_kp: balls give exactly one; k = n gives one within noise") {
    const Body ball = standard_body("ball", 3, BodyParams{.radius = 0.8}, RngStream(0));
    const auto est = i_kp(ball, 2, -3.0, false, 4000, RngStream(5), 2);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));

    const Body cube = standard_body("cube", 3);
    const auto full = i_kp(cube, 3, -3.0, false, 4000, RngStream(6), 2);
    CHECK(full.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("W_2 of the unit cube is S/3 = 2") {
    const Body cube = standard_body("cube", 3);
    const auto est = q_kp(cube, QuermassSpec{2, 1.0, false, 100000}, RngStream(7), 2);
    CHECK(std::abs(est.value - 2.0) <= 4.0 * est.std_error);
    CHECK(est.std_error < 0.01);
}

TEST_CASE("i_kp of the cube at negative moments exceeds one") {
    const Body cube = standard_body("cube", 3);
    const auto est = i_kp(cube, 2, -3.0, false, 100000, RngStream(8), 2);
    CHECK(est.value - 1.0 > 4.0 * est.std_error);
    // regression anchor, recorded from a high-budget run
    CHECK(est.value == doctest::Approx(1.2114).epsilon(0.01));
}

TEST_CASE("p-monotonicity of Q_{k,p} on shared samples") {
    const Body cube = standard_body("cube", 3);
    const auto shadows = shadow_samples(cube, 2, 50000, RngStream(9), 2);
    const double ps[] = {-3.0, -2.0, -1.0, 1.0};
    std::vector<MCEstimate> qs;
    for (double p : ps) qs.push_back(q_kp_from_samples(shadows, 3, 2, p, false, 9));
    const auto q0 = q_kp_from_samples(shadows, 3, 2, 0.0, true, 9);
    CHECK(qs[0].value <= qs[1].value + 1e-12);
    CHECK(qs[1].value <= qs[2].value + 1e-12);
    CHECK(qs[2].value <= q0.value + 1e-12);
    CHECK(q0.value <= qs[3].value + 1e-12);
}

TEST_CASE("non-invariance below p = -n for stretched ellipsoids") {
    Mat shape = Mat::Zero(3, 3);
    shape.diagonal() << 2.0, 1.0, 1.0;
    const Body ell{make_ellipsoid(Vec::Zero(3), shape)};
    const double vol = body_volume(ell, 1, RngStream(0)).value;
    for (int k : {1, 2}) {
        const auto est =
            q_kp(ell, QuermassSpec{k, -5.0, false, 200000}, RngStream(10), 2);  // p = -(n+2)
        const double ball_value = ball_quermass(3, k, vol);
        CHECK(ball_value - est.value > 4.0 * est.std_error);
    }
}

TEST_CASE("affine invariance of Phi_k") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> normal;
    const Body cube = standard_body("cube", 3);
    Mat t(3, 3);
    do {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = normal(gen);
    } while (std::abs(t.determinant()) < 0.2);
    t /= std::cbrt(std::abs(t.determinant()));  // det = +-1
    const Body img = affine_image(cube, t, Vec::Zero(3));

    for (int k : {1, 2}) {
        const auto a = phi_k(cube, k, 100000, RngStream(12), 2);
        const auto b = phi_k(img, k, 100000, RngStream(12), 2);
        const double joint = joint_std_error(a, b);
        CHECK(std::abs(a.value - b.value) <= 4.0 * joint);
    }
}

TEST_CASE("steiner polynomial fit recovers the cube coefficients") {
    const Body cube = standard_body("cube", 3);
    const std::vector<double> grid = {0.0, 0.15, 0.35, 0.6, 0.9, 1.3, 1.7, 2.0};
    const auto fit =
        steiner_poly_fit(std::get<VPolytope>(cube), grid, 200000, RngStream(13), 2);
    // |K + tB| = W0 t^3 + 3 W1 t^2 + 3 W2 t + W3 with W0 = |B^3|, W2 = S/3, W3 = |K|
    CHECK(fit.w_hat[3] == doctest::Approx(1.0).epsilon(0.03));
    CHECK(fit.w_hat[0] == doctest::Approx(unit_ball_volume(3)).epsilon(0.03));
    CHECK(fit.w_hat[2] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("polar projection gauge") {
    const Body ball = standard_body("ball", 3);
    Vec e3 = Vec::Zero(3);
    e3[2] = 1.0;
    CHECK(polar_projection_norm(ball, e3) == doctest::Approx(M_PI).epsilon(1e-12));

    const Body cube = standard_body("cube", 3);
    CHECK(polar_projection_norm(cube, e3) == doctest::Approx(1.0).epsilon(1e-12));
    Vec x(3);
    x << 0.3, -1.2, 0.7;
    CHECK(polar_projection_norm(cube, 2.0 * x) ==
          doctest::Approx(2.0 * polar_projection_norm(cube, x)).epsilon(1e-12));
}

TEST_CASE("polar projection body volume: ball closed form and scaling") {
    const Body ball = standard_body("ball", 3);
    const auto est = polar_projection_volume(ball, 1000, RngStream(14), 2);
    const double expected = unit_ball_volume(3) * std::pow(unit_ball_volume(2), -3);
    CHECK(est.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(est.std_error == 0.0);

    const Body cube = standard_body("cube", 3);
    const Body big = affine_image(cube, 2.0 * Mat::Identity(3, 3), Vec::Zero(3));
    const auto a = polar_projection_volume(cube, 50000, RngStream(15), 2);
    const auto b = polar_projection_volume(big, 50000, RngStream(15), 2);
    const double scale = std::pow(2.0, -3 * (3 - 1));  // 2^{-n(n-1)}
    const double joint = std::sqrt(std::pow(a.std_error * scale, 2) + b.std_error * b.std_error);
    CHECK(std::abs(b.value - scale * a.value) <= 4.0 * joint);
}

TEST_CASE("polar projection volume is consistent with Phi_{n-1}") {
    // |Pi* K| = |B_n|^{n+1} |B_{n-1}|^{-n} Phi_{n-1}(K)^{-n}
    const Body cube = standard_body("cube", 3);
    const auto pp = polar_projection_volume(cube, 150000, RngStream(16), 2);
    const auto phi = phi_k(cube, 2, 150000, RngStream(17), 2);
    const double factor =
        std::pow(unit_ball_volume(3), 4) * std::pow(unit_ball_volume(2), -3);
    const double implied = factor * std::pow(phi.value, -3);
    // delta-method error of the implied value plus the direct one
    const double implied_se = 3.0 * implied / phi.value * phi.std_error;
    const double joint = std::sqrt(pp.std_error * pp.std_error + implied_se * implied_se);
    CHECK(std::abs(pp.value - implied) <= 4.0 * joint);
}

TEST_CASE("negative moments stay above the inscribed-ball floor") {
    const Body cube = standard_body("cube", 3);
    const auto shadows = shadow_samples(cube, 2, 20000, RngStream(18), 2);
    const double floor = unit_ball_volume(2) * 0.25;  // rho = 1/2
    for (double s : shadows) CHECK(s >= 0.999 * floor);
}
