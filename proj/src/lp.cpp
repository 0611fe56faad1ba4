#include "affiq/lp.hpp"

#include <cmath>
#include <limits>

namespace affiq {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;

struct Tableau {
    Mat d;                   // m x (n_cols + 1); last column is the rhs
    std::vector<int> basis;  // size m
    int n_cols;

    int rows() const { return static_cast<int>(d.rows()); }
    double rhs(int i) const { return d(i, n_cols); }

    void pivot(int r, int s, Vec& obj, double& value) {
        d.row(r) /= d(r, s);
        for (int i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double f = d(i, s);
            if (f != 0.0) d.row(i) -= f * d.row(r);
        }
        const double cs = obj[s];
        if (cs != 0.0) {
            value += cs * d(r, n_cols);
            obj.head(n_cols) -= cs * d.row(r).head(n_cols).transpose();
            obj[s] = 0.0;
        }
        basis[r] = s;
    }
};

enum class CoreStatus { Optimal, Unbounded };

// Maximizes obj over the tableau's feasible region. obj holds reduced costs
// for the current basis; value tracks the objective. allowed_cols limits the
// entering candidates (used to exclude artificials in phase 2).
CoreStatus simplex_core(Tableau& t, Vec& obj, double& value, int allowed_cols) {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < allowed_cols; ++j) {
            if (obj[j] > kCostTol) {
                enter = j;
                break;  // Bland: smallest improving index
            }
        }
        if (enter < 0) return CoreStatus::Optimal;

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < t.rows(); ++i) {
            const double a = t.d(i, enter);
            if (a <= kPivotTol) continue;
            const double ratio = t.rhs(i) / a;
            if (leave < 0) {
                leave = i;
                best_ratio = ratio;
                continue;
            }
            const double tie = kFeasTol * (1.0 + std::abs(best_ratio));
            if (ratio < best_ratio - tie) {
                leave = i;
                best_ratio = ratio;
            } else if (ratio <= best_ratio + tie && t.basis[i] < t.basis[leave]) {
                leave = i;  // tie: smallest basis index
                best_ratio = std::min(best_ratio, ratio);
            }
        }
        if (leave < 0) return CoreStatus::Unbounded;
        t.pivot(leave, enter, obj, value);
    }
}

}  // namespace

LPResult lp_solve(const LPProblem& p) {
    const int n = static_cast<int>(p.objective.size());
    const int m = static_cast<int>(p.eq_rhs.size());
    require(static_cast<int>(p.nonneg.size()) == n, ErrorCode::BadDims, "nonneg flag count");
    require(p.eq_matrix.rows() == m && (m == 0 || p.eq_matrix.cols() == n), ErrorCode::BadDims,
            "constraint matrix shape");
    require_finite(p.objective, "lp objective");
    if (m > 0) {
        require_finite(p.eq_matrix, "lp matrix");
        require_finite(p.eq_rhs, "lp rhs");
    }

    // Standard form: split free variables into positive and negative parts.
    std::vector<int> split_of(n, -1);
    int n_std = n;
    for (int j = 0; j < n; ++j) {
        if (!p.nonneg[j]) split_of[j] = n_std++;
    }

    const int n_total = n_std + m;  // structurals then artificials
    Tableau t;
    t.n_cols = n_total;
    t.d = Mat::Zero(m, n_total + 1);
    t.basis.resize(m);

    for (int i = 0; i < m; ++i) {
        const double sign = p.eq_rhs[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double a = sign * p.eq_matrix(i, j);
            t.d(i, j) = a;
            if (split_of[j] >= 0) t.d(i, split_of[j]) = -a;
        }
        t.d(i, n_std + i) = 1.0;
        t.d(i, n_total) = sign * p.eq_rhs[i];
        t.basis[i] = n_std + i;
    }

    // Phase 1: maximize minus the sum of artificials.
    Vec obj1 = Vec::Zero(n_total);
    double value1 = 0.0;
    for (int i = 0; i < m; ++i) {
        value1 -= t.rhs(i);
        obj1.head(n_std) += t.d.row(i).head(n_std).transpose();
    }
    simplex_core(t, obj1, value1, n_total);
    if (value1 < -kFeasTol) return {LPStatus::Infeasible, 0.0, Vec()};

    // Pivot lingering zero-level artificials out, or mark their rows redundant.
    std::vector<int> keep_rows;
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < n_std) {
            keep_rows.push_back(i);
            continue;
        }
        int s = -1;
        for (int j = 0; j < n_std; ++j) {
            if (std::abs(t.d(i, j)) > kPivotTol) {
                s = j;
                break;
            }
        }
        if (s >= 0) {
            Vec dummy_obj = Vec::Zero(n_total);
            double dummy_val = 0.0;
            t.pivot(i, s, dummy_obj, dummy_val);
            keep_rows.push_back(i);
        }
        // else: redundant constraint; dropped below
    }
    if (static_cast<int>(keep_rows.size()) != m) {
        Mat nd(keep_rows.size(), n_total + 1);
        std::vector<int> nb(keep_rows.size());
        for (std::size_t k = 0; k < keep_rows.size(); ++k) {
            nd.row(k) = t.d.row(keep_rows[k]);
            nb[k] = t.basis[keep_rows[k]];
        }
        t.d = std::move(nd);
        t.basis = std::move(nb);
    }

    // Phase 2 over structural columns only.
    Vec cost = Vec::Zero(n_total);
    for (int j = 0; j < n; ++j) {
        cost[j] = p.objective[j];
        if (split_of[j] >= 0) cost[split_of[j]] = -p.objective[j];
    }
    Vec obj2 = cost;
    double value2 = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
        const double cb = cost[t.basis[i]];
        if (cb != 0.0) {
            value2 += cb * t.rhs(i);
            obj2.head(t.n_cols) -= cb * t.d.row(i).head(t.n_cols).transpose();
        }
    }
    for (int i = 0; i < t.rows(); ++i) obj2[t.basis[i]] = 0.0;

    const CoreStatus st = simplex_core(t, obj2, value2, n_std);
    if (st == CoreStatus::Unbounded) return {LPStatus::Unbounded, 0.0, Vec()};

    Vec x_std = Vec::Zero(n_std);
    for (int i = 0; i < t.rows(); ++i) {
        if (t.basis[i] < n_std) x_std[t.basis[i]] = t.rhs(i);
    }
    Vec x(n);
    for (int j = 0; j < n; ++j) {
        x[j] = split_of[j] >= 0 ? x_std[j] - x_std[split_of[j]] : x_std[j];
    }
    return {LPStatus::Optimal, value2, std::move(x)};
}

}  // namespace affiq
