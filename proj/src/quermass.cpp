#include "affiq/quermass.hpp"

#include <cmath>

namespace affiq {

VolumeResult projection_volume(const Body& b, const Subspace& f) {
    const int n = body_dim(b);
    require(f.ambient_dim() == n, ErrorCode::DimensionMismatch, "subspace ambient dim");
    const int k = f.dim();
    require(k >= 1, ErrorCode::BadDims, "projection needs dim >= 1");

    if (const auto* e = std::get_if<Ellipsoid>(&b)) {
        if (e->isotropic)
            return {unit_ball_volume(k) * std::pow(e->radius, k), VolumeMethod::Exact, 0.0};
        const Mat a = f.frame().transpose() * e->shape;  // k x n
        const double det = (a * a.transpose()).determinant();
        return {unit_ball_volume(k) * std::sqrt(std::max(det, 0.0)), VolumeMethod::Exact, 0.0};
    }
    const auto* v = std::get_if<VPolytope>(&b);
    require(v != nullptr, ErrorCode::UnsupportedRepresentation,
            "projection volume of an H-polytope");
    return {hull_volume(v->vertices * f.frame()), VolumeMethod::Exact, 0.0};
}

namespace {

// Shadow floor |P_F K| >= |B^k| rho^k: catches degenerate bodies before they
// poison negative moments.
struct ShadowGuard {
    double floor;
    void check(double shadow) const {
        require(shadow >= floor, ErrorCode::NumericFailure,
                "projection volume below inscribed-ball floor");
    }
};

ShadowGuard make_guard(const Body& b, int k) {
    const double rho = inscribed_radius(b);
    return {0.999 * unit_ball_volume(k) * std::pow(rho, k)};
}

}  // namespace

std::vector<double> shadow_samples(const Body& b, int k, std::size_t n_samples,
                                   const RngStream& rng, int threads) {
    const int n = body_dim(b);
    require(k >= 1 && k <= n, ErrorCode::BadDims, "shadow dimension");
    const auto guard = make_guard(b, k);
    std::vector<double> out;
    fill_indexed_samples(
        out, n_samples, rng,
        [&](std::size_t, RngStream s) {
            const auto f = sample_grassmannian(n, k, s);
            const double val = projection_volume(b, f).value;
            guard.check(val);
            return val;
        },
        threads);
    return out;
}

void shadow_sample_pairs(const Body& a, const Body& b, int k, std::size_t n_samples,
                         const RngStream& rng, std::vector<double>& out_a,
                         std::vector<double>& out_b, int threads) {
    const int n = body_dim(a);
    require(body_dim(b) == n, ErrorCode::DimensionMismatch, "paired bodies");
    require(k >= 1 && k <= n, ErrorCode::BadDims, "shadow dimension");
    const auto ga = make_guard(a, k);
    const auto gb = make_guard(b, k);
    fill_indexed_sample_pairs(
        out_a, out_b, n_samples, rng,
        [&](std::size_t, RngStream s) {
            const auto f = sample_grassmannian(n, k, s);
            const double va = projection_volume(a, f).value;
            const double vb = projection_volume(b, f).value;
            ga.check(va);
            gb.check(vb);
            return std::pair{va, vb};
        },
        threads);
}

MCEstimate q_kp_from_samples(std::span<const double> shadows, int n, int k, double p,
                             bool log_mean, std::uint64_t seed) {
    const double constant = unit_ball_volume(n) / unit_ball_volume(k);
    std::vector<double> vals(shadows.size());
    if (log_mean) {
        for (std::size_t i = 0; i < shadows.size(); ++i) vals[i] = std::log(shadows[i]);
        return log_mean_estimate(vals, constant, seed);
    }
    require(p != 0.0, ErrorCode::InvalidArgument, "p = 0 requires the log-mean path");
    for (std::size_t i = 0; i < shadows.size(); ++i) vals[i] = std::pow(shadows[i], p);
    return power_mean_estimate(vals, p, constant, seed);
}

MCEstimate q_kp(const Body& b, const QuermassSpec& spec, const RngStream& rng, int threads) {
    const int n = body_dim(b);
    require(spec.k >= 1 && spec.k <= n, ErrorCode::BadDims, "1 <= k <= n");
    const auto shadows = shadow_samples(b, spec.k, spec.budget, rng, threads);
    return q_kp_from_samples(shadows, n, spec.k, spec.p, spec.log_mean, rng.seed());
}

MCEstimate phi_k(const Body& b, int k, std::size_t budget, const RngStream& rng, int threads) {
    QuermassSpec spec;
    spec.k = k;
    spec.p = -static_cast<double>(body_dim(b));
    spec.budget = budget;
    return q_kp(b, spec, rng, threads);
}

double ball_quermass(int n, int k, double volume) {
    require(volume > 0.0, ErrorCode::InvalidArgument, "volume must be positive");
    return std::pow(unit_ball_volume(n), (n - k) / static_cast<double>(n)) *
           std::pow(volume, k / static_cast<double>(n));
}

MCEstimate i_kp(const Body& b, int k, double p, bool log_mean, std::size_t budget,
                const RngStream& rng, int threads) {
    const int n = body_dim(b);
    QuermassSpec spec{k, p, log_mean, budget};
    const auto q = q_kp(b, spec, rng, threads);
    const auto vol = body_volume(b, budget, rng.substream(0x10f), threads);
    const double qb = ball_quermass(n, k, vol.value);

    MCEstimate e = q;
    e.value = q.value / qb;
    // d log(Q_ball) = (k/n) d log(V): fold the volume noise in when present.
    const double rel_q = q.value != 0.0 ? q.std_error / q.value : 0.0;
    const double rel_v =
        vol.value > 0.0 ? (k / static_cast<double>(n)) * (vol.std_error / vol.value) : 0.0;
    e.std_error = std::abs(e.value) * std::sqrt(rel_q * rel_q + rel_v * rel_v);
    return e;
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

SteinerFit steiner_poly_fit(const VPolytope& b, std::span<const double> t_grid,
                            std::size_t budget, const RngStream& rng, int threads) {
    const int n = b.dim();
    require(n == 3, ErrorCode::BadDims, "steiner fit is a 3-d check");
    require(t_grid.size() >= 6, ErrorCode::InvalidArgument, "need >= 6 grid points");
    for (double t : t_grid)
        require(t >= 0.0 && t <= 2.0, ErrorCode::InvalidArgument, "t grid outside [0, 2]");

    SteinerFit fit;
    fit.t_grid.assign(t_grid.begin(), t_grid.end());

    Vec lo0(n), hi0(n);
    for (int j = 0; j < n; ++j) {
        lo0[j] = b.vertices.col(j).minCoeff();
        hi0[j] = b.vertices.col(j).maxCoeff();
    }

    Mat design(t_grid.size(), n + 1);
    Vec y(t_grid.size());
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
        const double t = t_grid[g];
        const auto member = minkowski_sum_ball(Body{b}, t);
        const Vec lo = lo0.array() - t;
        const Vec hi = hi0.array() + t;
        const auto vol = volume_mc(member, lo, hi, budget, rng.substream(g), threads);
        fit.volumes.push_back(vol.value);
        fit.volume_errors.push_back(vol.std_error);
        y[g] = vol.value;
        for (int k = 0; k <= n; ++k) design(g, k) = binomial(n, k) * std::pow(t, n - k);
    }
    fit.w_hat = design.colPivHouseholderQr().solve(y);
    return fit;
}

double polar_projection_norm(const Body& b, const Vec& x) {
    const int n = body_dim(b);
    require(static_cast<int>(x.size()) == n, ErrorCode::DimensionMismatch, "gauge point dim");
    const double norm = x.norm();
    require(norm > 0.0, ErrorCode::ZeroVector, "gauge of 0");
    const Mat basis = complement_basis(x / norm);
    return norm * projection_volume(b, Subspace::from_frame(basis)).value;
}

MCEstimate polar_projection_volume(const Body& b, std::size_t budget, const RngStream& rng,
                                   int threads) {
    const int n = body_dim(b);
    require(n >= 2, ErrorCode::BadDims, "ambient dimension");
    std::vector<double> vals;
    fill_indexed_samples(
        vals, budget, rng,
        [&](std::size_t, RngStream s) {
            const Vec theta = sample_sphere(n, s);
            const Mat basis = complement_basis(theta);
            const double shadow = projection_volume(b, Subspace::from_frame(basis)).value;
            return std::pow(shadow, -n);
        },
        threads);
    return mean_estimate(vals, rng.seed(), unit_ball_volume(n));
}

}  // namespace affiq
