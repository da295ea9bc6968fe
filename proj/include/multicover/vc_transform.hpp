#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "multicover/lp.hpp"
#include "multicover/rounding.hpp"

namespace multicover {

// One prefix chunk of a point's covering inequality: the ranges with ids in
// [alpha, beta] that contain the point carry fractional weight in [1/2, 3/4).
// Range ids in ascending order are the fixed numbering.
struct PrefixGroup {
    PointId point = 0;
    RangeId alpha = 0;  // smallest id in the chunk
    RangeId beta = 0;   // largest id in the chunk
    double weight = 0.0;
};

// Set-cover view of the split inequalities: one element per (point, interval)
// pair; range i covers the pairs whose point it contains and whose interval
// holds i.  Covering any one pair per interval yields distinct ranges per
// point, so a set cover here lifts to a multi-cover of the source instance.
struct TransformedSystem {
    std::vector<PrefixGroup> pairs;
    std::map<RangeId, std::vector<std::size_t>> ranges;  // id -> indices into pairs
    std::vector<RangeId> numbering;                      // the fixed range order used
};

struct TransformedBuild {
    TransformedSystem system;
    WeightedRangeSet witness;     // doubled weights, feasible for the pairs
    double witness_value = 0.0;   // total of the doubled weights
};

// Splits each positive-demand point's covering inequality into shortest
// prefixes of weight >= 1/2 under the fixed id order.  Requires every weight
// < 1/4, which caps each chunk below 3/4 and yields at least demand(p) chunks
// per point whose inequality holds.
std::vector<PrefixGroup> split_inequalities(const MultiCoverInstance& inst, const FractionalSolution& x);

// Materializes the pair system for the given groups and checks that doubling
// the weights fractionally covers every pair (a splitting bug otherwise).
TransformedBuild build_transformed_system(const MultiCoverInstance& inst, const FractionalSolution& x,
                                          const std::vector<PrefixGroup>& groups);

// Pair indices not covered by any chosen range; empty means a set cover.
std::vector<std::size_t> uncovered_pairs(const TransformedSystem& system, const std::vector<RangeId>& chosen);

struct VcOptions {
    int max_attempts = 64;
    LpOptions lp;
};

struct VcResult {
    CoverSolution cover;
    RoundingTrace trace;
    double lp_value = 0.0;
};

// LP -> heavy extraction at 1/4 -> inequality splitting -> pair system ->
// independent sampling at rate min(1, alpha * delta_star * ln(f+2) * x_i),
// retried with fresh sub-seeds until the pair system is covered.  The
// returned cover (heavy + sample [+ top-up]) is verified feasible.
VcResult solve_multicover_vc(const MultiCoverInstance& inst, int delta_star, double alpha, std::uint64_t seed,
                             const VcOptions& opts = {});

struct RepetitionOptions {
    double draw_multiplier = 3.0;  // scales the number of draws per attempt
    int max_attempts = 64;
    LpOptions lp;
};

// Copies-allowed variant: draws ceil(mult * delta_star * f * ln(f+2)) ranges
// i.i.d. with probability x_i / f each and retries until the multiset covers
// every demand.
VcResult solve_with_repetition(const MultiCoverInstance& inst, int delta_star, std::uint64_t seed,
                               const RepetitionOptions& opts = {});

}  // namespace multicover
