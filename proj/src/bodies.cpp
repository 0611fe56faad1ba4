#include "affiq/bodies.hpp"

#include <algorithm>
#include <cmath>

namespace affiq {

namespace {

constexpr double kMembershipTol = 1e-9;

void require_dim(const Body& b, const Vec& x) {
    require(static_cast<int>(x.size()) == body_dim(b), ErrorCode::DimensionMismatch,
            "vector vs body dimension");
}

Vec unit_checked(const Vec& u) {
    require(std::abs(u.norm() - 1.0) <= 1e-10, ErrorCode::NotUnitVector, "|u| != 1");
    return u;
}

}  // namespace

int body_dim(const Body& b) {
    return std::visit([](const auto& v) { return v.dim(); }, b);
}

const char* body_kind(const Body& b) {
    if (std::holds_alternative<VPolytope>(b)) return "vpoly";
    if (std::holds_alternative<HPolytope>(b)) return "hpoly";
    return "ellipsoid";
}

VPolytope make_vpolytope(Mat vertices) {
    require_finite(vertices, "vpolytope vertices");
    const int n = static_cast<int>(vertices.cols());
    require(n >= 1, ErrorCode::BadDims, "vertex dimension");
    require(vertices.rows() >= n + 1, ErrorCode::DegenerateInput, "need >= n+1 vertices");
    // Full dimensionality: greedy orthogonal residuals must reach rank n.
    const Vec origin = vertices.row(0).transpose();
    Mat basis(n, n);
    int rank = 0;
    const double scale = 1.0 + vertices.cwiseAbs().maxCoeff();
    for (int i = 1; i < vertices.rows() && rank < n; ++i) {
        Vec x = vertices.row(i).transpose() - origin;
        if (rank > 0) x -= basis.leftCols(rank) * (basis.leftCols(rank).transpose() * x);
        const double r = x.norm();
        if (r > 1e-10 * scale) basis.col(rank++) = x / r;
    }
    require(rank == n, ErrorCode::DegenerateInput, "vertices do not span R^n");
    return VPolytope{std::move(vertices)};
}

HPolytope make_hpolytope(Mat normals, Vec offsets) {
    require_finite(normals, "hpolytope normals");
    require_finite(offsets, "hpolytope offsets");
    const int r = static_cast<int>(normals.rows());
    const int n = static_cast<int>(normals.cols());
    require(r == offsets.size() && r >= n + 1, ErrorCode::BadDims, "row count");

    // Strict interior via a Chebyshev-style LP: max t, A y + |a_i| t <= b.
    // Standard form with slacks: A y + |a_i| t + s_i = b_i.
    {
        LPProblem lp;
        const int nv = n + 1 + r;
        lp.objective = Vec::Zero(nv);
        lp.objective[n] = 1.0;
        lp.eq_matrix = Mat::Zero(r, nv);
        lp.eq_rhs = offsets;
        for (int i = 0; i < r; ++i) {
            lp.eq_matrix.block(i, 0, 1, n) = normals.row(i);
            lp.eq_matrix(i, n) = normals.row(i).norm();
            lp.eq_matrix(i, n + 1 + i) = 1.0;
        }
        lp.nonneg.assign(nv, true);
        for (int j = 0; j < n; ++j) lp.nonneg[j] = false;
        const auto res = lp_solve(lp);
        require(res.status == LPStatus::Optimal || res.status == LPStatus::Unbounded,
                ErrorCode::DegenerateInput, "hpolytope is empty");
        require(res.status == LPStatus::Unbounded || res.value > 1e-10,
                ErrorCode::DegenerateInput, "hpolytope has empty interior");
    }

    HPolytope h{std::move(normals), std::move(offsets)};
    // Boundedness: every +-coordinate support must be finite.
    for (int j = 0; j < n; ++j) {
        for (double sgn : {1.0, -1.0}) {
            Vec dir = Vec::Zero(n);
            dir[j] = sgn;
            LPProblem lp;
            const int nv = n + h.count();
            lp.objective = Vec::Zero(nv);
            lp.objective.head(n) = dir;
            lp.eq_matrix = Mat::Zero(h.count(), nv);
            lp.eq_rhs = h.offsets;
            lp.eq_matrix.leftCols(n) = h.normals;
            lp.eq_matrix.rightCols(h.count()) = Mat::Identity(h.count(), h.count());
            lp.nonneg.assign(nv, true);
            for (int v = 0; v < n; ++v) lp.nonneg[v] = false;
            require(lp_solve(lp).status == LPStatus::Optimal, ErrorCode::DegenerateInput,
                    "hpolytope is unbounded");
        }
    }
    return h;
}

Ellipsoid make_ellipsoid(Vec center, Mat shape) {
    require_finite(center, "ellipsoid center");
    require_finite(shape, "ellipsoid shape");
    const int n = static_cast<int>(center.size());
    require(shape.rows() == n && shape.cols() == n, ErrorCode::BadDims, "shape matrix");
    Eigen::PartialPivLU<Mat> lu(shape);
    const double det = lu.determinant();
    require(std::abs(det) > 1e-12, ErrorCode::SingularTransform, "shape not invertible");
    Ellipsoid e;
    e.center = std::move(center);
    e.shape = std::move(shape);
    e.inv_shape = lu.inverse();
    e.abs_det = std::abs(det);
    e.isotropic = true;
    e.radius = e.shape(0, 0);
    for (int i = 0; i < n && e.isotropic; ++i)
        for (int j = 0; j < n; ++j)
            if (e.shape(i, j) != (i == j ? e.radius : 0.0)) {
                e.isotropic = false;
                break;
            }
    if (e.isotropic && e.radius <= 0.0) e.isotropic = false;
    return e;
}

double support(const Body& b, const Vec& x) {
    require_dim(b, x);
    require_finite(x, "support direction");
    if (const auto* v = std::get_if<VPolytope>(&b)) return (v->vertices * x).maxCoeff();
    if (const auto* e = std::get_if<Ellipsoid>(&b))
        return e->center.dot(x) + (e->shape.transpose() * x).norm();

    const auto& h = std::get<HPolytope>(b);
    const int n = h.dim();
    const int r = h.count();
    LPProblem lp;
    const int nv = n + r;
    lp.objective = Vec::Zero(nv);
    lp.objective.head(n) = x;
    lp.eq_matrix = Mat::Zero(r, nv);
    lp.eq_matrix.leftCols(n) = h.normals;
    lp.eq_matrix.rightCols(r) = Mat::Identity(r, r);
    lp.eq_rhs = h.offsets;
    lp.nonneg.assign(nv, true);
    for (int j = 0; j < n; ++j) lp.nonneg[j] = false;
    const auto res = lp_solve(lp);
    require(res.status == LPStatus::Optimal, ErrorCode::NumericFailure,
            "support LP not optimal");
    return res.value;
}

bool membership(const Body& b, const Vec& x) {
    require_dim(b, x);
    require_finite(x, "membership point");
    if (const auto* h = std::get_if<HPolytope>(&b))
        return ((h->normals * x - h->offsets).array() <= kMembershipTol).all();
    if (const auto* e = std::get_if<Ellipsoid>(&b))
        return (e->inv_shape * (x - e->center)).norm() <= 1.0 + 1e-12;

    const auto& v = std::get<VPolytope>(b);
    const int m = v.count();
    const int n = v.dim();
    LPProblem lp;
    lp.objective = Vec::Zero(m);
    lp.eq_matrix = Mat(n + 1, m);
    lp.eq_matrix.topRows(n) = v.vertices.transpose();
    lp.eq_matrix.row(n).setOnes();
    lp.eq_rhs = Vec(n + 1);
    lp.eq_rhs.head(n) = x;
    lp.eq_rhs[n] = 1.0;
    lp.nonneg.assign(m, true);
    return lp_solve(lp).status == LPStatus::Optimal;
}

HPolytope polar(const VPolytope& p) {
    const int n = p.dim();
    // Origin must be strictly interior: conv(p) has to contain a small
    // cross-polytope around 0 (max t with +- t e_j expressible).
    double margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        for (double sgn : {1.0, -1.0}) {
            LPProblem lp;
            const int m = p.count();
            lp.objective = Vec::Zero(m + 1);
            lp.objective[m] = 1.0;  // maximize t
            lp.eq_matrix = Mat::Zero(n + 1, m + 1);
            lp.eq_matrix.topLeftCorner(n, m) = p.vertices.transpose();
            lp.eq_matrix(j, m) = -sgn;
            lp.eq_matrix.row(n).head(m).setOnes();
            lp.eq_rhs = Vec::Zero(n + 1);
            lp.eq_rhs[n] = 1.0;
            lp.nonneg.assign(m + 1, true);
            const auto res = lp_solve(lp);
            margin = std::min(margin, res.status == LPStatus::Optimal ? res.value : 0.0);
        }
    }
    require(margin > 1e-9, ErrorCode::OriginNotInterior, "origin not strictly interior");
    return make_hpolytope(p.vertices, Vec::Ones(p.count()));
}

VPolytope difference_body(const Body& b) {
    const auto* v = std::get_if<VPolytope>(&b);
    require(v != nullptr, ErrorCode::UnsupportedRepresentation,
            "difference body needs a V-polytope");
    const int m = v->count();
    std::vector<Vec> diffs;
    diffs.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            diffs.push_back((v->vertices.row(i) - v->vertices.row(j)).transpose());
    const auto ext = hull_reduce(diffs);
    Mat verts(ext.size(), v->dim());
    for (std::size_t i = 0; i < ext.size(); ++i) verts.row(i) = ext[i].transpose();
    return make_vpolytope(std::move(verts));
}

Body affine_image(const Body& b, const Mat& t, const Vec& shift) {
    const int n = body_dim(b);
    require(t.rows() == n && t.cols() == n && shift.size() == n, ErrorCode::BadDims,
            "transform dims");
    require_finite(t, "transform");
    require_finite(shift, "shift");
    Eigen::PartialPivLU<Mat> lu(t);
    require(std::abs(lu.determinant()) > 1e-12, ErrorCode::SingularTransform,
            "transform not invertible");

    if (const auto* v = std::get_if<VPolytope>(&b)) {
        Mat verts = v->vertices * t.transpose();
        verts.rowwise() += shift.transpose();
        return make_vpolytope(std::move(verts));
    }
    if (const auto* e = std::get_if<Ellipsoid>(&b))
        return make_ellipsoid(t * e->center + shift, t * e->shape);

    const auto& h = std::get<HPolytope>(b);
    const Mat ti_t = lu.inverse().transpose();  // T^{-T}
    Mat normals = h.normals * ti_t.transpose();
    Vec offsets = h.offsets + normals * shift;
    return make_hpolytope(std::move(normals), std::move(offsets));
}

Body reflect(const Body& b, const Vec& u) {
    const Vec uu = unit_checked(u);
    const int n = body_dim(b);
    require(static_cast<int>(uu.size()) == n, ErrorCode::DimensionMismatch, "reflect dim");
    const Mat t = Mat::Identity(n, n) - 2.0 * uu * uu.transpose();
    return affine_image(b, t, Vec::Zero(n));
}

double distance_to_vpolytope(const VPolytope& p, const Vec& x, double tol) {
    require(static_cast<int>(x.size()) == p.dim(), ErrorCode::DimensionMismatch, "point dim");
    const int m = p.count();
    const Mat w = p.vertices.rowwise() - x.transpose();  // min-norm point of conv(w)

    // Wolfe's min-norm-point algorithm: finite, exact up to roundoff.
    int start = 0;
    double best = w.row(0).squaredNorm();
    for (int i = 1; i < m; ++i) {
        const double d = w.row(i).squaredNorm();
        if (d < best) {
            best = d;
            start = i;
        }
    }
    std::vector<int> corral = {start};
    std::vector<double> alpha = {1.0};
    Vec y = w.row(start).transpose();
    const double scale2 = 1.0 + w.rowwise().squaredNorm().maxCoeff();
    const double term_tol = 1e-13 * scale2;

    auto affine_min = [&](std::vector<double>& beta) {
        const int k = static_cast<int>(corral.size());
        Mat sys = Mat::Zero(k + 1, k + 1);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sys(i, j) = 2.0 * w.row(corral[i]).dot(w.row(corral[j]));
        sys.block(0, k, k, 1).setOnes();
        sys.block(k, 0, 1, k).setOnes();
        Vec rhs = Vec::Zero(k + 1);
        rhs[k] = 1.0;
        const Vec sol = sys.fullPivLu().solve(rhs);
        beta.assign(sol.data(), sol.data() + k);
    };

    for (int major = 0; major < 2 * m + 16; ++major) {
        int s = 0;
        double smin = w.row(0).dot(y);
        for (int i = 1; i < m; ++i) {
            const double v = w.row(i).dot(y);
            if (v < smin) {
                smin = v;
                s = i;
            }
        }
        if (y.squaredNorm() - smin <= term_tol) break;
        bool already = false;
        for (int i : corral) already = already || i == s;
        if (already) break;  // numerically stalled at optimum
        corral.push_back(s);
        alpha.push_back(0.0);

        for (int minor = 0; minor < 2 * m + 16; ++minor) {
            std::vector<double> beta;
            affine_min(beta);
            bool interior = true;
            for (double b : beta) interior = interior && b > 1e-12;
            if (interior) {
                alpha = beta;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < beta.size(); ++i)
                if (beta[i] <= 1e-12 && alpha[i] > beta[i])
                    theta = std::min(theta, alpha[i] / (alpha[i] - beta[i]));
            for (std::size_t i = 0; i < beta.size(); ++i)
                alpha[i] += theta * (beta[i] - alpha[i]);
            std::vector<int> next_corral;
            std::vector<double> next_alpha;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (alpha[i] > 1e-12) {
                    next_corral.push_back(corral[i]);
                    next_alpha.push_back(alpha[i]);
                }
            }
            if (next_corral.empty()) {  // keep the best single vertex
                next_corral.push_back(corral[0]);
                next_alpha.push_back(1.0);
            }
            corral = std::move(next_corral);
            alpha = std::move(next_alpha);
        }
        y.setZero();
        for (std::size_t i = 0; i < corral.size(); ++i)
            y += alpha[i] * w.row(corral[i]).transpose();
    }

    const double dist = y.norm();
    if (dist > tol) {
        const Vec dir = -y / dist;
        const double lower = dir.dot(x) - (p.vertices * dir).maxCoeff();
        require(dist - lower <= std::max(1e-6, 10 * tol) * (1.0 + dist),
                ErrorCode::NumericFailure, "distance certificate gap too large");
    }
    return dist;
}

namespace {

// Distance from x to a general ellipsoid: 0 inside, else solve the Lagrange
// condition |z(mu)| = 1 with z(mu) = (S^T S + mu I)^{-1} S^T (x - c).
double distance_to_ellipsoid(const Ellipsoid& e, const Vec& x) {
    const Vec d = x - e.center;
    if ((e.inv_shape * d).norm() <= 1.0) return 0.0;
    if (e.isotropic) return d.norm() - e.radius;

    const Mat sts = e.shape.transpose() * e.shape;
    const Vec std_ = e.shape.transpose() * d;
    auto znorm = [&](double mu) {
        const Vec z = (sts + mu * Mat::Identity(sts.rows(), sts.cols())).ldlt().solve(std_);
        return z.norm();
    };
    double lo = 0.0, hi = 1.0;
    while (znorm(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (znorm(mid) > 1.0 ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    const Vec z = (sts + mu * Mat::Identity(sts.rows(), sts.cols())).ldlt().solve(std_);
    return (x - (e.center + e.shape * (z / std::max(z.norm(), 1e-300)))).norm();
}

}  // namespace

std::function<bool(const Vec&)> minkowski_sum_ball(const Body& b, double t) {
    require(t >= 0.0, ErrorCode::InvalidArgument, "negative inflation");
    if (const auto* v = std::get_if<VPolytope>(&b)) {
        VPolytope p = *v;
        return [p, t](const Vec& x) { return distance_to_vpolytope(p, x) <= t + 1e-7; };
    }
    if (const auto* e = std::get_if<Ellipsoid>(&b)) {
        Ellipsoid el = *e;
        return [el, t](const Vec& x) { return distance_to_ellipsoid(el, x) <= t + 1e-7; };
    }
    fail(ErrorCode::UnsupportedRepresentation, "parallel body of an H-polytope");
}

Body standard_body(const std::string& name, int n, const BodyParams& params, RngStream rng) {
    require(n >= 2, ErrorCode::BadDims, "need dimension >= 2");
    if (name == "cube" || name == "box") {
        Vec sides = params.sides;
        if (name == "cube" || sides.size() == 0) sides = Vec::Ones(n);
        require(static_cast<int>(sides.size()) == n && (sides.array() > 0).all(),
                ErrorCode::InvalidArgument, "box sides");
        Mat verts(1 << n, n);
        for (int mask = 0; mask < (1 << n); ++mask)
            for (int j = 0; j < n; ++j) verts(mask, j) = (mask >> j & 1) ? sides[j] : 0.0;
        return make_vpolytope(std::move(verts));
    }
    if (name == "simplex") {
        Mat verts = Mat::Zero(n + 1, n);
        verts.bottomRows(n) = Mat::Identity(n, n);
        return make_vpolytope(std::move(verts));
    }
    if (name == "cross-polytope") {
        Mat verts = Mat::Zero(2 * n, n);
        for (int j = 0; j < n; ++j) {
            verts(2 * j, j) = params.radius;
            verts(2 * j + 1, j) = -params.radius;
        }
        return make_vpolytope(std::move(verts));
    }
    if (name == "random-poly") {
        const int m = params.m > 0 ? params.m : 3 * n;
        require(m >= n + 1, ErrorCode::InvalidArgument, "too few vertices");
        Mat verts(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) verts(i, j) = rng.gaussian();
        std::vector<Vec> pts;
        for (int i = 0; i < m; ++i) pts.push_back(verts.row(i).transpose());
        const auto ext = hull_reduce(pts);
        Mat out(ext.size(), n);
        for (std::size_t i = 0; i < ext.size(); ++i) out.row(i) = ext[i].transpose();
        return make_vpolytope(std::move(out));
    }
    if (name == "ball-polytope") {
        const int m = params.m > 0 ? params.m : 200;
        require(m >= n + 1, ErrorCode::InvalidArgument, "too few vertices");
        Mat verts(m, n);
        for (int i = 0; i < m; ++i) {
            Vec g(n);
            do {
                for (int j = 0; j < n; ++j) g[j] = rng.gaussian();
            } while (g.norm() < 1e-12);
            verts.row(i) = (params.radius * g / g.norm()).transpose();
        }
        return make_vpolytope(std::move(verts));
    }
    if (name == "ellipsoid") {
        Mat shape = params.shape.size() > 0 ? params.shape : Mat::Identity(n, n);
        Vec center = params.center.size() > 0 ? params.center : Vec::Zero(n);
        return make_ellipsoid(std::move(center), std::move(shape));
    }
    if (name == "ball") {
        return make_ellipsoid(Vec::Zero(n), params.radius * Mat::Identity(n, n));
    }
    fail(ErrorCode::UnknownName, "unknown body kind '" + name + "'");
}

Body standard_body(const std::string& name, int n) {
    return standard_body(name, n, BodyParams{}, RngStream(0));
}

VolumeResult body_volume(const Body& b, std::size_t mc_budget, const RngStream& rng,
                         int threads) {
    if (const auto* e = std::get_if<Ellipsoid>(&b))
        return {e->abs_det * unit_ball_volume(e->dim()), VolumeMethod::Exact, 0.0};

    if (const auto* v = std::get_if<VPolytope>(&b)) {
        if (v->dim() <= 6 && v->count() <= 500)
            return {hull_volume(v->vertices), VolumeMethod::Exact, 0.0};
    }
    Vec lo, hi;
    bounding_box(b, lo, hi);
    Body copy = b;
    return volume_mc([copy](const Vec& x) { return membership(copy, x); }, lo, hi,
                     mc_budget, rng, threads);
}

void bounding_box(const Body& b, Vec& lo, Vec& hi) {
    const int n = body_dim(b);
    lo.resize(n);
    hi.resize(n);
    for (int j = 0; j < n; ++j) {
        Vec e = Vec::Zero(n);
        e[j] = 1.0;
        hi[j] = support(b, e);
        e[j] = -1.0;
        lo[j] = -support(b, e);
    }
}

double inscribed_radius(const Body& b) {
    if (const auto* e = std::get_if<Ellipsoid>(&b)) {
        Eigen::JacobiSVD<Mat> svd(e->shape);
        return svd.singularValues().minCoeff();
    }
    if (const auto* h = std::get_if<HPolytope>(&b)) {
        // Chebyshev-center LP: max t s.t. A y + |a_i| t <= b.
        const int n = h->dim();
        const int r = h->count();
        LPProblem lp;
        const int nv = n + 1 + r;
        lp.objective = Vec::Zero(nv);
        lp.objective[n] = 1.0;
        lp.eq_matrix = Mat::Zero(r, nv);
        lp.eq_rhs = h->offsets;
        for (int i = 0; i < r; ++i) {
            lp.eq_matrix.block(i, 0, 1, n) = h->normals.row(i);
            lp.eq_matrix(i, n) = h->normals.row(i).norm();
            lp.eq_matrix(i, n + 1 + i) = 1.0;
        }
        lp.nonneg.assign(nv, true);
        for (int j = 0; j < n; ++j) lp.nonneg[j] = false;
        const auto res = lp_solve(lp);
        return res.status == LPStatus::Optimal ? std::max(0.0, res.value) : 0.0;
    }
    const auto& v = std::get<VPolytope>(b);
    const auto h = convex_hull([&] {
        std::vector<Vec> pts;
        for (int i = 0; i < v.count(); ++i) pts.push_back(v.vertices.row(i).transpose());
        return pts;
    }());
    Vec c = Vec::Zero(v.dim());
    for (const auto& p : h.vertices) c += p;
    c /= static_cast<double>(h.vertices.size());
    double rho = std::numeric_limits<double>::infinity();
    for (const auto& f : h.facets) rho = std::min(rho, f.offset - f.normal.dot(c));
    return std::max(0.0, rho);
}

}  // namespace affiq
