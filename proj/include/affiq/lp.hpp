#pragma once

#include <vector>

#include "affiq/linalg.hpp"

namespace affiq {

// maximize objective . x  subject to  eq_matrix x = eq_rhs,
// x_i >= 0 where nonneg[i], x_i free otherwise.
struct LPProblem {
    Vec objective;
    Mat eq_matrix;
    Vec eq_rhs;
    std::vector<bool> nonneg;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    double value = 0.0;
    Vec x;
};

// Dense two-phase simplex, Bland's entering rule with smallest-basis-index tie
// break on the ratio test. Fully deterministic: identical problems produce
// bit-identical results.
LPResult lp_solve(const LPProblem& p);

}  // namespace affiq
