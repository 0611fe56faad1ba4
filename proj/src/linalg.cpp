#include "affiq/linalg.hpp"

#include <cmath>

namespace affiq {

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const Mat& m) { return m.allFinite(); }

void require_finite(const Vec& v, const char* what) {
    require(v.allFinite(), ErrorCode::NonFinite, what);
}

void require_finite(const Mat& m, const char* what) {
    require(m.allFinite(), ErrorCode::NonFinite, what);
}

double orthonormality_residual(const Mat& m) {
    if (m.cols() == 0) return 0.0;
    Mat g = m.transpose() * m;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

bool is_orthonormal_columns(const Mat& m, double tol) {
    return orthonormality_residual(m) <= tol;
}

Mat qr_orthonormalize(const Mat& m) {
    require_finite(m, "qr_orthonormalize input");
    const auto rows = m.rows();
    const auto cols = m.cols();
    require(cols <= rows, ErrorCode::BadDims, "more columns than rows");
    if (cols == 0) return Mat(rows, 0);

    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ() * Mat::Identity(rows, cols);
    const Mat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();

    double max_diag = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) max_diag = std::max(max_diag, std::abs(r(j, j)));
    for (Eigen::Index j = 0; j < cols; ++j) {
        require(std::abs(r(j, j)) > 1e-12 * max_diag && max_diag > 0.0, ErrorCode::RankDeficient,
                "columns numerically dependent");
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

Mat gaussian_matrix(int rows, int cols, RngStream& rng) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
    return m;
}

}  // namespace affiq
