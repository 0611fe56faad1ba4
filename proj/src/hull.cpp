#include "affiq/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "affiq/accum.hpp"
#include "affiq/lp.hpp"

namespace affiq {

double unit_ball_volume(int k) {
    require(k >= 0, ErrorCode::BadDims, "ball dimension");
    // |B^k| = pi^{k/2} / Gamma(k/2 + 1), evaluated by the recursion
    // |B^k| = |B^{k-2}| * 2 pi / k  with |B^0| = 1, |B^1| = 2.
    double v = (k % 2 == 0) ? 1.0 : 2.0;
    for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) v *= 2.0 * M_PI / j;
    return v;
}

double sphere_surface_area(int n) {
    require(n >= 1, ErrorCode::BadDims, "sphere dimension");
    return n * unit_ball_volume(n);
}

namespace {

double coord_scale(const Mat& pts) {
    return pts.size() == 0 ? 1.0 : 1.0 + pts.cwiseAbs().maxCoeff();
}

bool lex_less(const Mat& pts, int a, int b) {
    for (int j = 0; j < pts.cols(); ++j) {
        if (pts(a, j) < pts(b, j)) return true;
        if (pts(a, j) > pts(b, j)) return false;
    }
    return false;
}

// ----- 2-D monotone chain ------------------------------------------------

double cross2(const Mat& p, int o, int a, int b) {
    return (p(a, 0) - p(o, 0)) * (p(b, 1) - p(o, 1)) -
           (p(a, 1) - p(o, 1)) * (p(b, 0) - p(o, 0));
}

// Hull indices in counterclockwise order; strictly convex turns only.
// `idx` must be lexicographically sorted and duplicate-free.
void chain_2d(const Mat& pts, const std::vector<int>& idx, double eps_cross,
              std::vector<int>& out) {
    const int m = static_cast<int>(idx.size());
    out.clear();
    if (m < 3) {
        out.assign(idx.begin(), idx.end());
        return;
    }
    out.reserve(2 * m);
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = out.size();
        for (int t = 0; t < m; ++t) {
            const int i = idx[pass == 0 ? t : m - 1 - t];
            while (out.size() >= base + 2 &&
                   cross2(pts, out[out.size() - 2], out[out.size() - 1], i) <= eps_cross)
                out.pop_back();
            out.push_back(i);
        }
        out.pop_back();  // endpoint repeats as the start of the next pass
    }
}

// ----- incremental hull for d >= 3 ----------------------------------------

constexpr int kMaxDim = 6;

struct IncFacet {
    std::array<int, kMaxDim> v{};  // first d entries used
    Vec normal;
    double offset = 0.0;
    bool alive = true;
};

struct RidgeKey {
    std::array<int, kMaxDim - 1> v{};
    bool operator==(const RidgeKey&) const = default;
};

struct RidgeHash {
    std::size_t operator()(const RidgeKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : k.v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Hyperplane through the facet's first d points; false when degenerate.
bool facet_plane(const Mat& pts, const std::array<int, kMaxDim>& v, int d, Vec& normal,
                 double& offset) {
    Mat edges(d, d - 1);
    for (int j = 1; j < d; ++j)
        edges.col(j - 1) = (pts.row(v[j]) - pts.row(v[0])).transpose();
    Eigen::HouseholderQR<Mat> qr(edges);
    const Mat r = qr.matrixQR().topRows(d - 1).triangularView<Eigen::Upper>();
    double max_diag = 0.0;
    for (int j = 0; j < d - 1; ++j) max_diag = std::max(max_diag, std::abs(r(j, j)));
    if (max_diag <= 0.0) return false;
    for (int j = 0; j < d - 1; ++j)
        if (std::abs(r(j, j)) <= 1e-12 * max_diag) return false;
    normal = (qr.householderQ() * Mat::Identity(d, d)).col(d - 1);
    offset = normal.dot(pts.row(v[0]));
    return true;
}

class IncrementalBuilder {
public:
    IncrementalBuilder(const Mat& pts, int d) : pts_(pts), d_(d) {
        eps_ = 1e-10 * coord_scale(pts);
    }

    // Builds from the given insertion order; false signals a numerically
    // inconsistent surface (caller retries with perturbed coordinates).
    bool build(const std::vector<int>& order) {
        if (!initial_simplex(order)) return false;
        for (int i : order) {
            if (used_[i]) continue;
            if (!insert(i)) return false;
        }
        return manifold_ok();
    }

    bool degenerate_input() const { return degenerate_; }

    const std::vector<IncFacet>& facets() const { return facets_; }

    std::vector<int> extreme_indices() const {
        std::vector<char> mark(pts_.rows(), 0);
        for (const auto& f : facets_)
            if (f.alive)
                for (int j = 0; j < d_; ++j) mark[f.v[j]] = 1;
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(mark.size()); ++i)
            if (mark[i]) out.push_back(i);
        return out;
    }

    // Fan volume from the centroid of the extreme points, evaluated with the
    // supplied coordinates (may differ from the build coordinates).
    double volume(const Mat& coords) const {
        const auto ext = extreme_indices();
        Vec c = Vec::Zero(d_);
        for (int i : ext) c += coords.row(i).transpose();
        c /= static_cast<double>(ext.size());
        CompensatedSum acc;
        Mat m(d_, d_);
        for (const auto& f : facets_) {
            if (!f.alive) continue;
            for (int j = 0; j < d_; ++j) m.col(j) = coords.row(f.v[j]).transpose() - c;
            acc.add(std::abs(m.determinant()));
        }
        double fact = 1.0;
        for (int j = 2; j <= d_; ++j) fact *= j;
        return acc.value() / fact;
    }

private:
    bool initial_simplex(const std::vector<int>& order) {
        const int m = static_cast<int>(pts_.rows());
        used_.assign(m, 0);
        std::array<int, kMaxDim + 1> simplex{};
        simplex[0] = order[0];
        used_[order[0]] = 1;

        Mat basis(d_, d_);  // orthonormal span directions, grown column-wise
        const Vec origin = pts_.row(simplex[0]).transpose();
        for (int r = 0; r < d_; ++r) {
            int best = -1;
            double best_res = 0.0;
            Vec best_vec;
            for (int i = 0; i < m; ++i) {
                if (used_[i]) continue;
                Vec x = pts_.row(i).transpose() - origin;
                if (r > 0) x -= basis.leftCols(r) * (basis.leftCols(r).transpose() * x);
                const double res = x.norm();
                if (res > best_res) {
                    best_res = res;
                    best = i;
                    best_vec = x;
                }
            }
            if (best < 0 || best_res <= eps_) {
                degenerate_ = true;
                return false;
            }
            basis.col(r) = best_vec / best_res;
            simplex[r + 1] = best;
            used_[best] = 1;
        }

        interior_ = Vec::Zero(d_);
        for (int j = 0; j <= d_; ++j) interior_ += pts_.row(simplex[j]).transpose();
        interior_ /= static_cast<double>(d_ + 1);

        for (int skip = 0; skip <= d_; ++skip) {
            IncFacet f;
            int t = 0;
            for (int j = 0; j <= d_; ++j)
                if (j != skip) f.v[t++] = simplex[j];
            if (!facet_plane(pts_, f.v, d_, f.normal, f.offset)) return false;
            orient(f);
            facets_.push_back(std::move(f));
        }
        return true;
    }

    void orient(IncFacet& f) const {
        if (f.normal.dot(interior_) > f.offset) {
            f.normal = -f.normal;
            f.offset = -f.offset;
        }
    }

    bool insert(int p) {
        used_[p] = 1;
        const Vec x = pts_.row(p).transpose();
        visible_.clear();
        for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
            const auto& f = facets_[fi];
            if (f.alive && f.normal.dot(x) - f.offset > eps_) visible_.push_back(fi);
        }
        if (visible_.empty()) return true;

        ridges_.clear();
        for (int fi : visible_) {
            const auto& f = facets_[fi];
            for (int skip = 0; skip < d_; ++skip) {
                RidgeKey key;
                int t = 0;
                for (int j = 0; j < d_; ++j)
                    if (j != skip) key.v[t++] = f.v[j];
                std::sort(key.v.begin(), key.v.begin() + (d_ - 1));
                ++ridges_[key];
            }
        }

        for (int fi : visible_) facets_[fi].alive = false;
        for (const auto& [key, count] : ridges_) {
            if (count != 1) continue;  // interior ridge of the visible region
            IncFacet f;
            for (int j = 0; j < d_ - 1; ++j) f.v[j] = key.v[j];
            f.v[d_ - 1] = p;
            if (!facet_plane(pts_, f.v, d_, f.normal, f.offset)) return false;
            orient(f);
            if (f.normal.dot(x) < f.offset - eps_) return false;  // p must lie on its facet
            facets_.push_back(std::move(f));
        }
        return true;
    }

    bool manifold_ok() const {
        std::unordered_map<RidgeKey, int, RidgeHash> counts;
        for (const auto& f : facets_) {
            if (!f.alive) continue;
            for (int skip = 0; skip < d_; ++skip) {
                RidgeKey key;
                int t = 0;
                for (int j = 0; j < d_; ++j)
                    if (j != skip) key.v[t++] = f.v[j];
                std::sort(key.v.begin(), key.v.begin() + (d_ - 1));
                ++counts[key];
            }
        }
        for (const auto& [key, count] : counts)
            if (count != 2) return false;
        return true;
    }

    const Mat& pts_;
    int d_;
    double eps_;
    bool degenerate_ = false;
    Vec interior_;
    std::vector<IncFacet> facets_;
    std::vector<char> used_;
    std::vector<int> visible_;
    std::unordered_map<RidgeKey, int, RidgeHash> ridges_;
};

Mat perturbed(const Mat& pts, double amp) {
    if (amp == 0.0) return pts;
    Mat out = pts;
    const double s = amp * coord_scale(pts);
    for (int i = 0; i < out.rows(); ++i) {
        RngStream jitter(0x7a11ed5eedull, static_cast<uint64_t>(i));
        for (int j = 0; j < out.cols(); ++j) out(i, j) += s * (2.0 * jitter.uniform() - 1.0);
    }
    return out;
}

std::vector<int> canonical_order(const Mat& pts) {
    const int m = static_cast<int>(pts.rows());
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return lex_less(pts, a, b); });
    // drop exact/near duplicates among lexicographic neighbors
    const double tol = 1e-12 * coord_scale(pts);
    std::vector<int> out;
    for (int i : idx) {
        if (!out.empty() && (pts.row(i) - pts.row(out.back())).norm() <= tol) continue;
        out.push_back(i);
    }
    return out;
}

std::vector<int> insertion_order(const std::vector<int>& sorted_idx) {
    std::vector<int> order = sorted_idx;
    RngStream shuffle(0x5b5e1f0c9d2ull);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[shuffle.below(i)]);
    return order;
}

Mat to_matrix(const std::vector<Vec>& points) {
    require(!points.empty(), ErrorCode::DegenerateInput, "empty point set");
    const int d = static_cast<int>(points[0].size());
    Mat pts(points.size(), d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        require(points[i].size() == d, ErrorCode::DimensionMismatch, "mixed point dimensions");
        require_finite(points[i], "hull input point");
        pts.row(i) = points[i].transpose();
    }
    return pts;
}

HullResult finalize_nd(const Mat& pts, const IncrementalBuilder& builder, int d) {
    HullResult res;
    res.dim = d;
    auto ext = builder.extreme_indices();  // ascending = lexicographic (pts presorted)

    std::vector<int> remap(pts.rows(), -1);
    std::vector<int> keep;
    // Order extreme points lexicographically over the original matrix rows.
    std::sort(ext.begin(), ext.end(), [&](int a, int b) { return lex_less(pts, a, b); });
    for (int i : ext) {
        remap[i] = static_cast<int>(keep.size());
        keep.push_back(i);
        res.vertices.push_back(pts.row(i).transpose());
    }
    Vec c = Vec::Zero(d);
    for (const auto& v : res.vertices) c += v;
    c /= static_cast<double>(res.vertices.size());
    for (const auto& f : builder.facets()) {
        if (!f.alive) continue;
        HullFacet hf;
        hf.vertices.resize(d);
        for (int j = 0; j < d; ++j) hf.vertices[j] = remap[f.v[j]];
        std::sort(hf.vertices.begin(), hf.vertices.end());
        std::array<int, kMaxDim> orig{};
        for (int j = 0; j < d; ++j) orig[j] = keep[hf.vertices[j]];
        if (!facet_plane(pts, orig, d, hf.normal, hf.offset)) continue;  // perturbation sliver
        if (hf.normal.dot(c) > hf.offset) {
            hf.normal = -hf.normal;
            hf.offset = -hf.offset;
        }
        res.facets.push_back(std::move(hf));
    }
    std::sort(res.facets.begin(), res.facets.end(),
              [](const HullFacet& a, const HullFacet& b) { return a.vertices < b.vertices; });
    return res;
}

// Exact extreme-point polish: v is a vertex of conv(S) iff v lies outside
// conv(S minus v). Coplanar clouds (points emitted on flat facets) can leave
// redundant "vertices" behind after a perturbation retry; this removes them.
std::vector<int> lp_extreme_filter(const std::vector<Vec>& verts) {
    const int m = static_cast<int>(verts.size());
    const int n = static_cast<int>(verts[0].size());
    std::vector<int> keep;
    for (int v = 0; v < m; ++v) {
        LPProblem lp;
        lp.objective = Vec::Zero(m - 1);
        lp.eq_matrix = Mat(n + 1, m - 1);
        int c = 0;
        for (int i = 0; i < m; ++i) {
            if (i == v) continue;
            lp.eq_matrix.col(c).head(n) = verts[i];
            lp.eq_matrix(n, c) = 1.0;
            ++c;
        }
        lp.eq_rhs = Vec(n + 1);
        lp.eq_rhs.head(n) = verts[v];
        lp.eq_rhs[n] = 1.0;
        lp.nonneg.assign(m - 1, true);
        if (lp_solve(lp).status != LPStatus::Optimal) keep.push_back(v);
    }
    return keep;
}

HullResult convex_hull_raw(const std::vector<Vec>& points);

}  // namespace

HullResult convex_hull(const std::vector<Vec>& points) {
    HullResult res = convex_hull_raw(points);
    if (res.dim <= 2) return res;
    const auto keep = lp_extreme_filter(res.vertices);
    if (keep.size() == res.vertices.size()) return res;
    std::vector<Vec> filtered;
    filtered.reserve(keep.size());
    for (int i : keep) filtered.push_back(res.vertices[i]);
    return convex_hull_raw(filtered);
}

namespace {

HullResult convex_hull_raw(const std::vector<Vec>& points) {
    const Mat pts = to_matrix(points);
    const int d = static_cast<int>(pts.cols());
    require(d >= 1 && d <= kMaxDim, ErrorCode::BadDims, "hull supports dimensions 1..6");
    require(static_cast<int>(pts.rows()) >= d + 1, ErrorCode::DegenerateInput,
            "need at least dim+1 points");
    const auto sorted_idx = canonical_order(pts);
    const double scale = coord_scale(pts);

    HullResult res;
    res.dim = d;

    if (d == 1) {
        const int lo = sorted_idx.front();
        const int hi = sorted_idx.back();
        require(pts(hi, 0) - pts(lo, 0) > 1e-10 * scale, ErrorCode::DegenerateInput,
                "points coincide");
        res.vertices = {pts.row(lo).transpose(), pts.row(hi).transpose()};
        res.facets.resize(2);
        res.facets[0] = {{0}, Vec::Constant(1, -1.0), -pts(lo, 0)};
        res.facets[1] = {{1}, Vec::Constant(1, 1.0), pts(hi, 0)};
        return res;
    }

    if (d == 2) {
        std::vector<int> ring;
        chain_2d(pts, sorted_idx, 1e-10 * scale * scale, ring);
        require(ring.size() >= 3, ErrorCode::DegenerateInput, "points are collinear");
        // ring is CCW; emit canonical vertex order + edge facets
        std::vector<int> ext = ring;
        std::sort(ext.begin(), ext.end(), [&](int a, int b) { return lex_less(pts, a, b); });
        std::vector<int> remap(pts.rows(), -1);
        for (std::size_t i = 0; i < ext.size(); ++i) remap[ext[i]] = static_cast<int>(i);
        for (int i : ext) res.vertices.push_back(pts.row(i).transpose());
        for (std::size_t e = 0; e < ring.size(); ++e) {
            const int a = ring[e];
            const int b = ring[(e + 1) % ring.size()];
            HullFacet f;
            f.vertices = {remap[a], remap[b]};
            std::sort(f.vertices.begin(), f.vertices.end());
            Vec n(2);
            n << pts(b, 1) - pts(a, 1), -(pts(b, 0) - pts(a, 0));
            n.normalize();
            f.normal = n;
            f.offset = n.dot(pts.row(a));
            res.facets.push_back(std::move(f));
        }
        std::sort(res.facets.begin(), res.facets.end(),
                  [](const HullFacet& a, const HullFacet& b) { return a.vertices < b.vertices; });
        return res;
    }

    const auto order = insertion_order(sorted_idx);
    for (double amp : {0.0, 1e-12, 1e-9}) {
        const Mat coords = perturbed(pts, amp);
        IncrementalBuilder builder(coords, d);
        if (builder.build(order)) return finalize_nd(pts, builder, d);
        require(!builder.degenerate_input(), ErrorCode::DegenerateInput,
                "points do not span the ambient dimension");
    }
    fail(ErrorCode::NumericFailure, "convex hull did not stabilize under perturbation");
}

}  // namespace

std::vector<Vec> hull_reduce(const std::vector<Vec>& points) {
    return convex_hull(points).vertices;
}

VolumeResult volume_exact(const HullResult& h) {
    require(!h.vertices.empty() && !h.facets.empty(), ErrorCode::DegenerateInput, "empty hull");
    const int d = h.dim;
    if (d == 1) return {h.vertices.back()[0] - h.vertices.front()[0], VolumeMethod::Exact, 0.0};
    Vec c = Vec::Zero(d);
    for (const auto& v : h.vertices) c += v;
    c /= static_cast<double>(h.vertices.size());
    double fact = 1.0;
    for (int j = 2; j <= d; ++j) fact *= j;
    CompensatedSum acc;
    Mat m(d, d);
    for (const auto& f : h.facets) {
        for (int j = 0; j < d; ++j) m.col(j) = h.vertices[f.vertices[j]] - c;
        acc.add(std::abs(m.determinant()));
    }
    return {acc.value() / fact, VolumeMethod::Exact, 0.0};
}

double hull_volume(const Mat& pts) {
    const int d = static_cast<int>(pts.cols());
    require(d >= 1 && d <= kMaxDim, ErrorCode::BadDims, "hull supports dimensions 1..6");
    require(pts.rows() >= d + 1, ErrorCode::DegenerateInput, "need at least dim+1 points");
    require_finite(pts, "hull_volume input");

    if (d == 1) return pts.col(0).maxCoeff() - pts.col(0).minCoeff();

    if (d == 2) {
        thread_local std::vector<int> idx, ring;
        const int m = static_cast<int>(pts.rows());
        idx.resize(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return lex_less(pts, a, b); });
        const double scale = coord_scale(pts);
        chain_2d(pts, idx, 1e-12 * scale * scale, ring);
        if (ring.size() < 3) return 0.0;
        CompensatedSum acc;
        for (std::size_t e = 0; e < ring.size(); ++e) {
            const int a = ring[e];
            const int b = ring[(e + 1) % ring.size()];
            acc.add(pts(a, 0) * pts(b, 1) - pts(b, 0) * pts(a, 1));
        }
        return std::abs(acc.value()) / 2.0;
    }

    const auto sorted_idx = canonical_order(pts);
    require(static_cast<int>(sorted_idx.size()) >= d + 1, ErrorCode::DegenerateInput,
            "need at least dim+1 distinct points");
    const auto order = insertion_order(sorted_idx);
    for (double amp : {0.0, 1e-12, 1e-9}) {
        const Mat coords = perturbed(pts, amp);
        IncrementalBuilder builder(coords, d);
        if (builder.build(order)) return builder.volume(pts);
        require(!builder.degenerate_input(), ErrorCode::DegenerateInput,
                "points do not span the ambient dimension");
    }
    fail(ErrorCode::NumericFailure, "convex hull did not stabilize under perturbation");
}

VolumeResult volume_mc(const std::function<bool(const Vec&)>& member, const Vec& lo,
                       const Vec& hi, std::size_t n_samples, const RngStream& rng,
                       int threads) {
    const int d = static_cast<int>(lo.size());
    require(hi.size() == d && d >= 1, ErrorCode::BadDims, "box dims");
    require(n_samples >= 1, ErrorCode::InvalidArgument, "need at least one sample");
    double box = 1.0;
    for (int j = 0; j < d; ++j) {
        require(hi[j] > lo[j], ErrorCode::EmptyBox, "empty bounding box");
        box *= hi[j] - lo[j];
    }
    std::vector<double> hits;
    fill_indexed_samples(
        hits, n_samples, rng,
        [&](std::size_t, RngStream s) {
            Vec x(d);
            for (int j = 0; j < d; ++j) x[j] = lo[j] + s.uniform() * (hi[j] - lo[j]);
            return member(x) ? 1.0 : 0.0;
        },
        threads);
    const double p = mean(hits);
    const double se = box * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n_samples)));
    return {box * p, VolumeMethod::MonteCarlo, se};
}

}  // namespace affiq
