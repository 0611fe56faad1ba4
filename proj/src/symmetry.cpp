#include "affiq/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace affiq {

namespace {

void check_direction(const Vec& u, int n) {
    require(static_cast<int>(u.size()) == n, ErrorCode::DimensionMismatch, "direction dim");
    require(std::abs(u.norm() - 1.0) <= 1e-10, ErrorCode::NotUnitVector, "|u| != 1");
}

std::optional<ChordResult> chord_vpoly(const VPolytope& v, const Vec& u, const Vec& y) {
    const int m = v.count();
    const int n = v.dim();
    // vars: lambda (m, >= 0), s (free); rows: V^T lambda - s u = y, sum lambda = 1
    LPProblem lp;
    lp.objective = Vec::Zero(m + 1);
    lp.objective[m] = 1.0;
    lp.eq_matrix = Mat::Zero(n + 1, m + 1);
    lp.eq_matrix.topLeftCorner(n, m) = v.vertices.transpose();
    lp.eq_matrix.col(m).head(n) = -u;
    lp.eq_matrix.row(n).head(m).setOnes();
    lp.eq_rhs = Vec(n + 1);
    lp.eq_rhs.head(n) = y;
    lp.eq_rhs[n] = 1.0;
    lp.nonneg.assign(m + 1, true);
    lp.nonneg[m] = false;

    const auto hi = lp_solve(lp);
    if (hi.status != LPStatus::Optimal) return std::nullopt;
    lp.objective[m] = -1.0;
    const auto lo = lp_solve(lp);
    if (lo.status != LPStatus::Optimal) return std::nullopt;
    return ChordResult{-lo.value, hi.value, y};
}

std::optional<ChordResult> chord_hpoly(const HPolytope& h, const Vec& u, const Vec& y) {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (int i = 0; i < h.count(); ++i) {
        const double a = h.normals.row(i).dot(u);
        const double slack = h.offsets[i] - h.normals.row(i).dot(y);
        if (std::abs(a) <= 1e-12) {
            if (slack < -1e-9) return std::nullopt;
        } else if (a > 0.0) {
            upper = std::min(upper, slack / a);
        } else {
            lower = std::max(lower, slack / a);
        }
    }
    if (!(lower <= upper) || !std::isfinite(lower) || !std::isfinite(upper))
        return std::nullopt;
    return ChordResult{lower, upper, y};
}

std::optional<ChordResult> chord_ellipsoid(const Ellipsoid& e, const Vec& u, const Vec& y) {
    // |inv_shape (y + s u - c)|^2 <= 1, a quadratic in s
    const Vec w = e.inv_shape * (y - e.center);
    const Vec d = e.inv_shape * u;
    const double a = d.squaredNorm();
    const double b = 2.0 * w.dot(d);
    const double c = w.squaredNorm() - 1.0;
    if (a <= 0.0) return c <= 0.0 ? std::optional<ChordResult>({0.0, 0.0, y}) : std::nullopt;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    return ChordResult{(-b - root) / (2.0 * a), (-b + root) / (2.0 * a), y};
}

}  // namespace

std::optional<ChordResult> chord(const Body& b, const Vec& u, const Vec& y) {
    const int n = body_dim(b);
    check_direction(u, n);
    require(static_cast<int>(y.size()) == n, ErrorCode::DimensionMismatch, "base dim");
    require(std::abs(y.dot(u)) <= 1e-10 * (1.0 + y.norm()), ErrorCode::InvalidArgument,
            "base point not in u-perp");
    if (const auto* v = std::get_if<VPolytope>(&b)) return chord_vpoly(*v, u, y);
    if (const auto* h = std::get_if<HPolytope>(&b)) return chord_hpoly(*h, u, y);
    return chord_ellipsoid(std::get<Ellipsoid>(b), u, y);
}

namespace {

// Base points: exact vertex projections (mandatory, preserves the shadow)
// plus random convex combinations of three of them.
std::vector<Vec> base_points(const VPolytope& b, const Vec& u, int n_extra, RngStream& rng) {
    const int m = b.count();
    std::vector<Vec> base;
    base.reserve(m + n_extra);
    for (int i = 0; i < m; ++i) {
        const Vec v = b.vertices.row(i).transpose();
        base.push_back(v - v.dot(u) * u);
    }
    // dedupe exact duplicates (opposite facets of boxes project together)
    std::sort(base.begin(), base.end(), [](const Vec& a, const Vec& c) {
        for (int j = 0; j < a.size(); ++j) {
            if (a[j] < c[j]) return true;
            if (a[j] > c[j]) return false;
        }
        return false;
    });
    base.erase(std::unique(base.begin(), base.end(),
                           [](const Vec& a, const Vec& c) { return (a - c).norm() <= 1e-13; }),
               base.end());

    const int n_proj = static_cast<int>(base.size());
    for (int e = 0; e < n_extra; ++e) {
        const int i = static_cast<int>(rng.below(n_proj));
        const int j = static_cast<int>(rng.below(n_proj));
        const int k = static_cast<int>(rng.below(n_proj));
        double a = rng.uniform(), c = rng.uniform();
        if (a > c) std::swap(a, c);
        base.push_back(a * base[i] + (c - a) * base[j] + (1.0 - c) * base[k]);
    }
    return base;
}

}  // namespace

std::vector<VPolytope> shadow_profile(const VPolytope& b, const Vec& u,
                                      std::span<const double> t_values, int n_extra,
                                      RngStream rng) {
    const int n = b.dim();
    check_direction(u, n);
    require(n_extra >= 0, ErrorCode::InvalidArgument, "n_extra");
    for (double t : t_values)
        require(std::abs(t) <= 1.0, ErrorCode::InvalidArgument,
                "volume-preserving range is t in [-1, 1]");

    const auto base = base_points(b, u, n_extra, rng);
    std::vector<double> mid, len;
    std::vector<const Vec*> kept;
    mid.reserve(base.size());
    len.reserve(base.size());
    for (const auto& y : base) {
        const auto c = chord(Body{b}, u, y);
        if (!c) continue;  // boundary rounding can push a sampled base outside
        mid.push_back(c->midpoint());
        len.push_back(c->length());
        kept.push_back(&y);
    }
    require(kept.size() >= static_cast<std::size_t>(n), ErrorCode::NumericFailure,
            "too few usable fibers");

    std::vector<VPolytope> out;
    out.reserve(t_values.size());
    for (double t : t_values) {
        std::vector<Vec> cloud;
        cloud.reserve(2 * kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const double center = t * mid[i];
            const double half = 0.5 * len[i];
            cloud.push_back(*kept[i] + (center + half) * u);
            cloud.push_back(*kept[i] + (center - half) * u);
        }
        const auto ext = hull_reduce(cloud);
        Mat verts(ext.size(), n);
        for (std::size_t i = 0; i < ext.size(); ++i) verts.row(i) = ext[i].transpose();
        out.push_back(make_vpolytope(std::move(verts)));
    }
    return out;
}

ShadowBody shadow_body(const VPolytope& b, const Vec& u, double t, int n_extra,
                       RngStream rng) {
    const double ts[1] = {t};
    auto bodies = shadow_profile(b, u, std::span<const double>(ts, 1), n_extra, rng);
    return ShadowBody{b, u, t, std::move(bodies.front())};
}

VPolytope steiner_symmetral(const VPolytope& b, const Vec& u, int n_extra, RngStream rng) {
    return shadow_body(b, u, 0.0, n_extra, std::move(rng)).body;
}

}  // namespace affiq
