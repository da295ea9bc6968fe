#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "multicover/instance.hpp"
#include "multicover/lp.hpp"

namespace multicover {

// Knobs for the randomized-rounding primitives.  The multiplier c must stay
// >= 4 for the coverage tail bound to hold; K and V describe the demand
// profile a caller promises for expected_residual_check.
struct SamplingParameters {
    double c = 4.0;
    double K = 1.0;
    double V = 0.0;
    std::uint64_t seed = 0;
};

// Record of one randomized-rounding run: the final cover is exactly the
// multiset union of heavy, sample, and completion.
struct RoundingTrace {
    std::vector<RangeId> heavy;
    std::vector<RangeId> sample;      // may repeat ids when copies are allowed
    std::vector<RangeId> completion;  // may repeat ids when copies are allowed
    long long residual_before = 0;
    long long residual_after = 0;
    std::uint64_t seed = 0;
    int trial = 0;  // retry index that produced the final sample
};

struct HeavySplit {
    std::vector<RangeId> heavy;  // ids with weight >= beta, ascending
    FractionalSolution rest;     // the remaining fractional weights
};

// Splits off the ranges whose fractional weight reaches beta.  The heavy set
// has at most value(x)/beta members.
HeavySplit extract_heavy(const FractionalSolution& x, double beta);

// Includes each range independently with probability min(1, c * weight).
// One uniform draw per (seed, trial, range id): reruns are bit-identical and
// raising c with the same seed/trial only ever adds ranges.
std::vector<RangeId> cx_sample(const WeightedRangeSet& x, double c, std::uint64_t seed, std::uint64_t trial = 0);

// exp(-c*d/4): bound on the probability that a point of demand d is left
// uncovered by a cx-sample, and on its expected residual demand.
double tail_bound(double c, int d);

// Covers every open demand by scanning points in ascending id order,
// crediting ranges the completion already holds, then taking the missing
// count in ascending range-id order.  Output size <= total demand.
CoverSolution greedy_complete(const MultiCoverInstance& residual);

struct ResidualCheckResult {
    double mean_residual = 0.0;
    double stddev = 0.0;
    long long trials = 0;
    double c_used = 0.0;
};

// Draws instances from `sampler`, cx-samples each with c >= 4 + 4 ln K, and
// reports the mean total residual demand (the empirical side of the
// small-instance sampling guarantee: mean <= V when E|P_t| <= V*K^t).
ResidualCheckResult expected_residual_check(
    const std::function<std::pair<MultiCoverInstance, WeightedRangeSet>(std::uint64_t)>& sampler,
    const SamplingParameters& params, long long trials);

}  // namespace multicover
