#include "affiq/grassmann.hpp"

#include <cmath>

#include "affiq/hull.hpp"

namespace affiq {

Subspace Subspace::from_frame(Mat frame) {
    require_finite(frame, "subspace frame");
    require(frame.cols() <= frame.rows(), ErrorCode::BadDims, "frame shape");
    require(is_orthonormal_columns(frame, 1e-10), ErrorCode::InvalidArgument,
            "frame columns not orthonormal");
    return Subspace(std::move(frame));
}

Mat complement_basis(const Vec& u) {
    const int n = static_cast<int>(u.size());
    require(std::abs(u.norm() - 1.0) <= 1e-10, ErrorCode::NotUnitVector, "|u| != 1");
    Eigen::HouseholderQR<Mat> qr(u);
    Mat q = qr.householderQ() * Mat::Identity(n, n);
    if (q.col(0).dot(u) < 0.0) q.col(0) = -q.col(0);
    return q.rightCols(n - 1);
}

Subspace sample_grassmannian(int n, int k, RngStream& rng) {
    require(n >= 1 && k >= 1 && k <= n, ErrorCode::BadDims, "grassmannian dims");
    Mat g = gaussian_matrix(n, k, rng);
    return Subspace::from_frame(qr_orthonormalize(g));
}

Mat sample_rotation(int n, RngStream& rng) {
    require(n >= 2, ErrorCode::BadDims, "rotation dimension");
    Mat g = gaussian_matrix(n, n, rng);
    Mat q = qr_orthonormalize(g);
    if (q.determinant() < 0.0) q.col(n - 1) = -q.col(n - 1);
    return q;
}

Vec sample_sphere(int n, RngStream& rng) {
    require(n >= 1, ErrorCode::BadDims, "sphere dimension");
    Vec g(n);
    double norm = 0.0;
    do {
        for (int j = 0; j < n; ++j) g[j] = rng.gaussian();
        norm = g.norm();
    } while (norm < 1e-12);
    return g / norm;
}

SplitSample sample_split(const Vec& u, int n, int k, RngStream& rng) {
    require(static_cast<int>(u.size()) == n, ErrorCode::BadDims, "direction dim");
    require(k >= 1 && k <= n - 1, ErrorCode::BadDims, "split needs 1 <= k <= n-1");

    SplitSample out;
    if (k == 1) {
        out.e = Subspace::trivial(n);
        out.theta = sample_sphere(n, rng);
        out.weight = 1.0;  // exponent k-1 = 0
        return out;
    }

    const Mat basis = complement_basis(u);  // n x (n-1)
    Mat g = gaussian_matrix(n - 1, k - 1, rng);
    const Mat frame = basis * qr_orthonormalize(g);  // embedded in R^n
    out.e = Subspace::from_frame(frame);

    // theta uniform on the unit sphere of E-perp (dimension n-k+1)
    Vec t(n);
    double norm = 0.0;
    do {
        for (int j = 0; j < n; ++j) t[j] = rng.gaussian();
        t -= frame * (frame.transpose() * t);
        norm = t.norm();
    } while (norm < 1e-12);
    out.theta = t / norm;
    out.weight = std::pow(std::abs(out.theta.dot(u)), k - 1);
    return out;
}

Subspace span_of(const Subspace& e, const Vec& x) {
    const int n = e.ambient_dim();
    require(static_cast<int>(x.size()) == n, ErrorCode::DimensionMismatch, "span dim");
    Vec r = x;
    if (e.dim() > 0) r -= e.frame() * (e.frame().transpose() * x);
    const double norm = r.norm();
    require(norm > 1e-10 * std::max(1.0, x.norm()), ErrorCode::DependentVector,
            "vector lies in the subspace");
    Mat frame(n, e.dim() + 1);
    if (e.dim() > 0) frame.leftCols(e.dim()) = e.frame();
    frame.col(e.dim()) = r / norm;
    return Subspace::from_frame(std::move(frame));
}

BpCheck bp_ratio_check(const std::function<double(const Subspace&)>& f, const Vec& u, int n,
                       int k, std::size_t n_samples, const RngStream& rng, int threads) {
    require(k >= 1 && k <= n - 1, ErrorCode::BadDims, "bp check dims");
    const double sphere_area = sphere_surface_area(n - k + 1);  // area of S^{n-k}

    std::vector<double> lhs_vals, rhs_vals;
    fill_indexed_samples(
        lhs_vals, n_samples, rng.substream(0xbf01),
        [&](std::size_t, RngStream s) { return f(sample_grassmannian(n, k, s)); }, threads);
    fill_indexed_samples(
        rhs_vals, n_samples, rng.substream(0xbf02),
        [&](std::size_t, RngStream s) {
            const auto split = sample_split(u, n, k, s);
            return sphere_area * split.weight * f(span_of(split.e, split.theta));
        },
        threads);

    BpCheck out;
    out.lhs = mean_estimate(lhs_vals, rng.seed());
    out.rhs = mean_estimate(rhs_vals, rng.seed());
    out.ratio = out.rhs.value / out.lhs.value;
    out.ratio_std_error = ratio_std_error(out.rhs, out.lhs);
    return out;
}

}  // namespace affiq
