#include "affiq/rolodex.hpp"

#include <cmath>

#include "affiq/lp.hpp"

namespace affiq {

double wedge_volume(const Body& b, const Subspace& e, const Vec& x) {
    const int n = body_dim(b);
    require(e.ambient_dim() == n, ErrorCode::DimensionMismatch, "subspace ambient");
    require(static_cast<int>(x.size()) == n, ErrorCode::DimensionMismatch, "wedge vector");
    Vec perp = x;
    if (e.dim() > 0) perp -= e.frame() * (e.frame().transpose() * x);
    const double perp_norm = perp.norm();
    require(perp_norm > 1e-10 * std::max(1.0, x.norm()), ErrorCode::DependentVector,
            "x depends on E");
    const auto span = span_of(e, x);
    return perp_norm * projection_volume(b, span).value;
}

double le_gauge(const Body& b, const Subspace& e, const Vec& x) {
    return wedge_volume(b, e, x);
}

bool le_membership(const Body& b, const Subspace& e, const Vec& x) {
    const int n = body_dim(b);
    require(static_cast<int>(x.size()) == n, ErrorCode::DimensionMismatch, "wedge vector");
    if (e.dim() > 0) {
        const double in_e = (e.frame().transpose() * x).norm();
        require(in_e <= 1e-9 * (1.0 + x.norm()), ErrorCode::InvalidArgument,
                "x must lie in E-perp");
    }
    if (x.norm() <= 1e-14) return true;  // wedge volume 0
    return wedge_volume(b, e, x) <= 1.0;
}

namespace {

// Width of the slice fiber: max/min of <x, point> over points of b whose
// E-projection equals w (w given in E-frame coordinates).
double slice_width(const VPolytope& b, const Subspace& e, const Vec& x, const Vec& w) {
    const int m = b.count();
    const int ke = e.dim();
    LPProblem lp;
    lp.objective = b.vertices * x;
    lp.eq_matrix = Mat(ke + 1, m);
    lp.eq_matrix.topRows(ke) = (b.vertices * e.frame()).transpose();
    lp.eq_matrix.row(ke).setOnes();
    lp.eq_rhs = Vec(ke + 1);
    lp.eq_rhs.head(ke) = w;
    lp.eq_rhs[ke] = 1.0;
    lp.nonneg.assign(m, true);

    const auto hi = lp_solve(lp);
    if (hi.status != LPStatus::Optimal) return 0.0;
    lp.objective = -lp.objective;
    const auto lo = lp_solve(lp);
    if (lo.status != LPStatus::Optimal) return 0.0;
    return hi.value + lo.value;  // h_{K^w}(x) + h_{K^w}(-x)
}

double trapezoid_1d(const VPolytope& b, const Subspace& e, const Vec& x, double w_lo,
                    double w_hi, int grid) {
    const double h = (w_hi - w_lo) / grid;
    CompensatedSum acc;
    for (int i = 0; i <= grid; ++i) {
        Vec w(1);
        w[0] = w_lo + i * h;
        const double f = slice_width(b, e, x, w);
        acc.add((i == 0 || i == grid) ? 0.5 * f : f);
    }
    return acc.value() * h;
}

double trapezoid_2d(const VPolytope& b, const Subspace& e, const Vec& x, const Vec& lo,
                    const Vec& hi, int grid) {
    const double hx = (hi[0] - lo[0]) / grid;
    const double hy = (hi[1] - lo[1]) / grid;
    CompensatedSum acc;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            Vec w(2);
            w[0] = lo[0] + i * hx;
            w[1] = lo[1] + j * hy;
            const double f = slice_width(b, e, x, w);
            const double wi = (i == 0 || i == grid) ? 0.5 : 1.0;
            const double wj = (j == 0 || j == grid) ? 0.5 : 1.0;
            acc.add(wi * wj * f);
        }
    }
    return acc.value() * hx * hy;
}

}  // namespace

FubiniResult fubini_check(const VPolytope& b, const Subspace& e, const Vec& x, int grid) {
    const int ke = e.dim();
    require(ke == 1 || ke == 2, ErrorCode::BadDims, "quadrature supports dim E in {1, 2}");
    require(grid >= 8 && grid % 2 == 0, ErrorCode::InvalidArgument, "grid must be even, >= 8");
    if (ke > 0) {
        const double in_e = (e.frame().transpose() * x).norm();
        require(in_e <= 1e-9 * (1.0 + x.norm()), ErrorCode::InvalidArgument,
                "x must lie in E-perp");
    }

    FubiniResult res;
    res.grid = grid;
    res.lhs = wedge_volume(b, e, x);

    const Mat w_verts = b.vertices * e.frame();  // m x ke
    auto value_at = [&](int g) {
        if (ke == 1)
            return trapezoid_1d(b, e, x, w_verts.col(0).minCoeff(), w_verts.col(0).maxCoeff(), g);
        Vec lo(2), hi(2);
        for (int j = 0; j < 2; ++j) {
            lo[j] = w_verts.col(j).minCoeff();
            hi[j] = w_verts.col(j).maxCoeff();
        }
        return trapezoid_2d(b, e, x, lo, hi, g);
    };
    const double coarse = value_at(grid / 2);
    const double fine = value_at(grid);
    res.rhs = (4.0 * fine - coarse) / 3.0;  // Richardson on the trapezoid rule
    return res;
}

namespace {

double gram_factor(const std::vector<Vec>& xs) {
    const int k = static_cast<int>(xs.size());
    Mat g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = xs[i].dot(xs[j]);
    const double det = g.determinant();
    return std::sqrt(std::max(det, 0.0));
}

Subspace span_of_vectors(const std::vector<Vec>& xs) {
    const int n = static_cast<int>(xs[0].size());
    Mat stack(n, xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) stack.col(j) = xs[j];
    return Subspace::from_frame(qr_orthonormalize(stack));
}

}  // namespace

WedgeTransformResult wedge_transform_check(const VPolytope& b, const Mat& t,
                                           const std::vector<Vec>& xs) {
    require(!xs.empty(), ErrorCode::InvalidArgument, "need at least one vector");
    const int n = b.dim();
    require(t.rows() == n && t.cols() == n, ErrorCode::BadDims, "transform dims");

    const Body image = affine_image(Body{b}, t, Vec::Zero(n));
    WedgeTransformResult res;
    res.lhs = gram_factor(xs) * projection_volume(image, span_of_vectors(xs)).value;

    std::vector<Vec> ys;
    ys.reserve(xs.size());
    for (const auto& x : xs) ys.push_back(t.transpose() * x);
    res.rhs = gram_factor(ys) * projection_volume(Body{b}, span_of_vectors(ys)).value;
    return res;
}

MCEstimate mu_estimate(const Body& b, const Vec& u, int k, std::size_t n_samples,
                       const RngStream& rng, int threads) {
    const int n = body_dim(b);
    require(k >= 1 && k <= n - 1, ErrorCode::BadDims, "1 <= k <= n-1");
    require(static_cast<int>(u.size()) == n, ErrorCode::DimensionMismatch, "direction dim");
    const double scale = sphere_surface_area(n - k + 1) / n;

    std::vector<double> vals;
    fill_indexed_samples(
        vals, n_samples, rng,
        [&](std::size_t, RngStream s) {
            const auto split = sample_split(u, n, k, s);
            const auto f = span_of(split.e, split.theta);
            const double shadow = projection_volume(b, f).value;
            return scale * split.weight * std::pow(shadow, -n);
        },
        threads);
    return mean_estimate(vals, rng.seed());
}

}  // namespace affiq
