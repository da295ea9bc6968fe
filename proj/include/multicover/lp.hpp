#pragma once

#include <string>
#include <vector>

#include "multicover/instance.hpp"

namespace multicover {

// Covering relaxation: minimize the total weight placed on ranges subject to
// every positive-demand point receiving at least its demand, with weights in
// [0,1], or [0,inf) when repetition is allowed.
struct LpProblem {
    std::vector<PointId> rows;               // row index -> point id, ascending
    std::vector<RangeId> cols;               // column index -> range id, ascending
    std::vector<std::vector<int>> row_cols;  // per row: covering column indices, ascending
    std::vector<double> rhs;                 // per row: demand
    bool bounded = true;                     // upper bound 1 on every variable unless repetition
};

LpProblem build_lp(const MultiCoverInstance& inst);

// Row-major sparse triplet dump, one record per line.
std::string dump_lp(const LpProblem& lp);

enum class LpMethod {
    kSimplex,    // exact tableau simplex on the covering dual
    kIterative,  // exponential-weight greedy + restricted solves with pricing
};

struct LpOptions {
    LpMethod method = LpMethod::kSimplex;
    double eps_opt = 1e-7;             // optimality slack of the exact method
    double eps_feas = 1e-9;            // feasibility slack of the returned point
    double eps_opt_iterative = 1e-2;   // accepted optimality slack of the iterative method
    int max_pivots = 500000;
    int max_pricing_rounds = 100;
};

struct FractionalSolution {
    WeightedRangeSet x;
    double value = 0.0;
    double tolerance = 0.0;  // every constraint holds within this slack
};

// Throws InfeasibleError (witness point) when demands cannot be met at all.
FractionalSolution solve_lp(const MultiCoverInstance& inst, const LpOptions& opts = {});

double lp_value(const MultiCoverInstance& inst, const LpOptions& opts = {});

}  // namespace multicover
