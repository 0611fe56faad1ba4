#pragma once

#include <Eigen/Dense>

#include "affiq/errors.hpp"
#include "affiq/rng.hpp"

namespace affiq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);
void require_finite(const Vec& v, const char* what);
void require_finite(const Mat& m, const char* what);

// Max-norm distance of m^T m from the identity; 0-column matrices count as exact.
double orthonormality_residual(const Mat& m);
bool is_orthonormal_columns(const Mat& m, double tol = 1e-10);

// Thin QR with the sign of each R diagonal fixed positive, so the result is a
// deterministic function of the input and Gaussian inputs yield Haar frames.
// Throws RankDeficient when the columns are (numerically) dependent.
Mat qr_orthonormalize(const Mat& m);

// n x count matrix of independent standard normals drawn from rng.
Mat gaussian_matrix(int rows, int cols, RngStream& rng);

}  // namespace affiq
