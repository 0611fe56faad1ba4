#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "affiq/accum.hpp"
#include "affiq/lp.hpp"
#include "affiq/rng.hpp"

#include "oracles.hpp"

using namespace affiq;

TEST_CASE("rng: replaying a stream yields identical draws") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: distinct stream ids diverge immediately") {
    RngStream a(42, 1), b(42, 2);
    int differing = 0;
    for (int i = 0; i < 16; ++i)
        if (a.next_u64() != b.next_u64()) ++differing;
    CHECK(differing == 16);
}

TEST_CASE("rng: gaussian moments at one million draws") {
    RngStream s(2024);
    const std::size_t n = 1000000;
    CompensatedSum sum, sumsq;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = s.gaussian();
        sum.add(g);
        sumsq.add(g * g);
    }
    const double mean = sum.value() / n;
    const double var = sumsq.value() / n - mean * mean;
    CHECK(std::abs(mean) < 0.004);          // 4 / sqrt(n)
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("rng: draw helper consumes the stream deterministically") {
    RngStream a(5, 1);
    const auto xs = rng_draw_gaussian(a, 32);
    RngStream b(5, 1);
    const auto ys = rng_draw_gaussian(b, 32);
    CHECK(xs.size() == 32);
    CHECK(xs == ys);
}

TEST_CASE("rng: substream accumulation is order independent") {
    const RngStream base(99, 3);
    const std::size_t n = 10000;
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream s = base.substream(i);
        vals[i] = s.gaussian();
    }
    CompensatedSum forward;
    for (std::size_t i = 0; i < n; ++i) forward.add(vals[i]);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 gen(7);
    std::shuffle(perm.begin(), perm.end(), gen);
    CompensatedSum shuffled;
    for (std::size_t i : perm) shuffled.add(vals[perm[i] % n]);

    CompensatedSum permuted;
    for (std::size_t i : perm) permuted.add(vals[i]);
    CHECK(permuted.value() == doctest::Approx(forward.value()).epsilon(1e-9));
}

TEST_CASE("qr: identity is a fixed point") {
    const Mat q = qr_orthonormalize(Mat::Identity(3, 3));
    CHECK((q - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("qr: gram-schmidt on upper-triangular input") {
    Mat m(2, 2);
    m << 2, 1, 0, 1;
    const Mat q = qr_orthonormalize(m);
    CHECK((q - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qr: random frames are orthonormal and idempotent") {
    RngStream rng(11);
    const Mat g = gaussian_matrix(5, 3, rng);
    const Mat q = qr_orthonormalize(g);
    CHECK(orthonormality_residual(q) < 1e-10);
    const Mat q2 = qr_orthonormalize(q);
    CHECK((q2 - q).cwiseAbs().maxCoeff() < 1e-10);
    // same span: q q^T g == g
    CHECK((q * (q.transpose() * g) - g).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("qr: dependent columns are rejected") {
    Mat m(3, 2);
    m << 1, 2, 1, 2, 1, 2;
    CHECK_THROWS_AS((void)qr_orthonormalize(m), Error);
}

namespace {

LPProblem membership_lp(const Mat& verts, const Vec& x) {
    const int m = static_cast<int>(verts.rows());
    const int n = static_cast<int>(verts.cols());
    LPProblem lp;
    lp.objective = Vec::Zero(m);
    lp.eq_matrix = Mat(n + 1, m);
    lp.eq_matrix.topRows(n) = verts.transpose();
    lp.eq_matrix.row(n).setOnes();
    lp.eq_rhs = Vec(n + 1);
    lp.eq_rhs.head(n) = x;
    lp.eq_rhs[n] = 1.0;
    lp.nonneg.assign(m, true);
    return lp;
}

}  // namespace

TEST_CASE("lp: maximize x subject to x = 1") {
    LPProblem lp;
    lp.objective = Vec::Ones(1);
    lp.eq_matrix = Mat::Ones(1, 1);
    lp.eq_rhs = Vec::Ones(1);
    lp.nonneg = {true};
    const auto res = lp_solve(lp);
    REQUIRE(res.status == LPStatus::Optimal);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lp: hull membership feasibility") {
    Mat tri(3, 2);
    tri << 0, 0, 1, 0, 0, 1;
    CHECK(lp_solve(membership_lp(tri, oracle::vec2(0.5, 0.5))).status == LPStatus::Optimal);
    CHECK(lp_solve(membership_lp(tri, oracle::vec2(0.6, 0.6))).status == LPStatus::Infeasible);
}

TEST_CASE("lp: unbounded problems are reported") {
    LPProblem lp;
    lp.objective = Vec::Ones(2);
    lp.eq_matrix = Mat(1, 2);
    lp.eq_matrix << 1, -1;
    lp.eq_rhs = Vec::Zero(1);
    lp.nonneg = {true, true};
    CHECK(lp_solve(lp).status == LPStatus::Unbounded);
}

TEST_CASE("lp: deterministic across repeated solves") {
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 3, nv = 6;
        LPProblem lp;
        lp.eq_matrix = Mat(m, nv);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < nv; ++j) lp.eq_matrix(i, j) = unif(gen);
        lp.eq_matrix.row(0).setOnes();
        Vec x0(nv);
        for (int j = 0; j < nv; ++j) x0[j] = std::abs(unif(gen));
        lp.eq_rhs = lp.eq_matrix * x0;
        lp.objective = Vec(nv);
        for (int j = 0; j < nv; ++j) lp.objective[j] = unif(gen);
        lp.nonneg.assign(nv, true);

        const auto a = lp_solve(lp);
        const auto b = lp_solve(lp);
        REQUIRE(a.status == b.status);
        if (a.status == LPStatus::Optimal) {
            CHECK(a.value == b.value);  // bit identical
            CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("lp: primal equals dual on random bounded instances") {
    std::mt19937_64 gen(2025);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 3;
        const int nv = 4 + static_cast<int>(gen() % 5);  // <= 8 variables
        LPProblem primal;
        primal.eq_matrix = Mat(m, nv);
        for (int i = 1; i < m; ++i)
            for (int j = 0; j < nv; ++j) primal.eq_matrix(i, j) = unif(gen);
        primal.eq_matrix.row(0).setOnes();  // sum x = const keeps it bounded
        Vec x0(nv);
        for (int j = 0; j < nv; ++j) x0[j] = 0.1 + std::abs(unif(gen));
        primal.eq_rhs = primal.eq_matrix * x0;
        primal.objective = Vec(nv);
        for (int j = 0; j < nv; ++j) primal.objective[j] = unif(gen);
        primal.nonneg.assign(nv, true);

        const auto pres = lp_solve(primal);
        REQUIRE(pres.status == LPStatus::Optimal);

        // dual: min b^T y s.t. A^T y >= c  <=>  max (-b)^T y, A^T y - s = c
        LPProblem dual;
        const int dv = m + nv;
        dual.objective = Vec::Zero(dv);
        dual.objective.head(m) = -primal.eq_rhs;
        dual.eq_matrix = Mat::Zero(nv, dv);
        dual.eq_matrix.leftCols(m) = primal.eq_matrix.transpose();
        dual.eq_matrix.rightCols(nv) = -Mat::Identity(nv, nv);
        dual.eq_rhs = primal.objective;
        dual.nonneg.assign(dv, true);
        for (int j = 0; j < m; ++j) dual.nonneg[j] = false;

        const auto dres = lp_solve(dual);
        REQUIRE(dres.status == LPStatus::Optimal);
        const double dual_value = -dres.value;
        CHECK(std::abs(pres.value - dual_value) < 1e-7 * (1.0 + std::abs(pres.value)));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("lp: optimal points satisfy constraints") {
    Mat tri(3, 2);
    tri << 0, 0, 2, 0, 0, 2;
    // support of the triangle in direction (1, 1): max <x, (1,1)> = 2
    LPProblem lp = membership_lp(tri, oracle::vec2(0, 0));
    lp.objective = tri * oracle::vec2(1.0, 1.0);
    lp.eq_matrix = Mat(1, 3);
    lp.eq_matrix.setOnes();
    lp.eq_rhs = Vec::Ones(1);
    const auto res = lp_solve(lp);
    REQUIRE(res.status == LPStatus::Optimal);
    CHECK(res.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(res.x.sum() - 1.0) < 1e-9);
}
