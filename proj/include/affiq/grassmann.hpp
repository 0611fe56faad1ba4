#pragma once

#include <functional>

#include "affiq/estimate.hpp"
#include "affiq/linalg.hpp"
#include "affiq/rng.hpp"

namespace affiq {

// k-dimensional linear subspace of R^n held as an orthonormal frame (n x k).
// k = 0 (empty frame) is allowed and stands for the trivial subspace.
class Subspace {
public:
    Subspace() : frame_(0, 0) {}

    static Subspace from_frame(Mat frame);
    static Subspace trivial(int ambient_dim) { return Subspace(Mat(ambient_dim, 0)); }

    int ambient_dim() const { return static_cast<int>(frame_.rows()); }
    int dim() const { return static_cast<int>(frame_.cols()); }
    const Mat& frame() const { return frame_; }

    Vec coords(const Vec& x) const { return frame_.transpose() * x; }   // in-frame coordinates
    Vec project(const Vec& x) const { return frame_ * coords(x); }      // P_F x in R^n
    Mat projector() const { return frame_ * frame_.transpose(); }

private:
    explicit Subspace(Mat frame) : frame_(std::move(frame)) {}
    Mat frame_;
};

// Orthonormal basis of u-perp (n x (n-1)); u must be a unit vector.
Mat complement_basis(const Vec& u);

// Haar sample on G_{n,k}: sign-fixed QR of a Gaussian n x k matrix.
Subspace sample_grassmannian(int n, int k, RngStream& rng);

// Haar rotation from SO(n).
Mat sample_rotation(int n, RngStream& rng);

// Uniform point on the unit sphere S^{n-1}.
Vec sample_sphere(int n, RngStream& rng);

// One draw of the Blaschke-Petkantschin split at direction u:
// E Haar on G_{u-perp,k-1}, theta uniform on the unit sphere of E-perp,
// weight = |<theta,u>|^{k-1}.
struct SplitSample {
    Subspace e;
    Vec theta;
    double weight = 1.0;
};
SplitSample sample_split(const Vec& u, int n, int k, RngStream& rng);

// span(E, x): extends the frame by the normalized residual of x.
Subspace span_of(const Subspace& e, const Vec& x);

// Compares the plain Grassmannian average of f against the split-sampled side
// of the Blaschke-Petkantschin formula. The ratio rhs/lhs estimates the
// formula's constant and must not depend on f.
struct BpCheck {
    MCEstimate lhs;    // E_F[f]
    MCEstimate rhs;    // sphere-normalized split average of f * weight
    double ratio = 0.0;
    double ratio_std_error = 0.0;
};
BpCheck bp_ratio_check(const std::function<double(const Subspace&)>& f, const Vec& u, int n,
                       int k, std::size_t n_samples, const RngStream& rng, int threads = 1);

}  // namespace affiq
