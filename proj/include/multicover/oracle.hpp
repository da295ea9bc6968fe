#pragma once

#include <vector>

#include "multicover/instance.hpp"
#include "multicover/lp.hpp"
#include "multicover/rational.hpp"

namespace multicover {

struct ExactOptions {
    long long node_budget = 200000;
    LpOptions lp;
};

struct ExactResult {
    CoverSolution cover;
    bool optimal = false;   // search space exhausted within the node budget
    long long nodes = 0;
};

// Branch and bound over range multiplicities, branching on the range with the
// largest root LP weight first, pruning with ceil(LP value) bounds. Always
// returns a feasible cover (the incumbent) even when the budget truncates the
// proof of optimality.
ExactResult solve_exact(const MultiCoverInstance& inst, const ExactOptions& opts = {});

// Repeatedly picks the range covering the most currently-unmet demand units,
// breaking ties by smallest id.
CoverSolution solve_greedy_baseline(const MultiCoverInstance& inst);

struct RationalLpResult {
    Rational value;
    std::vector<std::pair<RangeId, Rational>> x;  // optimal vertex, ascending id, zeros included
};

// Exact covering LP optimum by enumerating basic feasible points in rational
// arithmetic. Caps: at most 8 points and 8 ranges. Independent of the float
// simplex code path.
RationalLpResult lp_vertex_oracle(const MultiCoverInstance& inst);

}  // namespace multicover
