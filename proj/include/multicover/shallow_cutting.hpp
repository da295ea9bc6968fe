#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multicover/geometry.hpp"
#include "multicover/rng.hpp"
#include "multicover/types.hpp"

namespace multicover {

struct CuttingCell {
    Trapezoid trap;
    std::vector<int> conflict;      // input halfplanes whose boundary crosses the interior
    double crossing_weight = 0.0;   // total weight of the conflict list
    int parent = -1;                // first-stage cell index when this is a patch sub-cell
};

struct PatchRecord {
    int cell = 0;       // first-stage cell index
    int excess = 0;     // ceil(crossing weight / (W/r))
    int net_size = 0;   // sample size used for the successful re-decomposition
    int resamples = 0;  // attempts consumed (1 = first try worked)
};

// Partition of the working box into trapezoids, each crossed by halfplane
// boundaries of total weight at most W/r.
struct Cutting {
    std::vector<CuttingCell> cells;
    double r = 1.0;
    double total_weight = 0.0;
    std::uint64_t seed = 0;
    BoundingBox box;
    std::size_t first_stage_cells = 0;
    std::vector<PatchRecord> patches;
};

struct CuttingOptions {
    int max_resamples = 100;
    double net_constant = 4.0;          // scales the patch sample size t*ln(t+1)
    std::uint64_t weight_scale = 1ull << 20;  // replication resolution for weighted sampling
    std::optional<BoundingBox> region;  // default: box spanned by the input boundary lines
};

// Crossing-weight threshold comparison shared by construction and
// verification, with a hair of relative slack for float accumulation.
bool within_crossing_budget(double crossing_weight, double total_weight, double r);

// Samples size entries proportional to their weights: integer replication at
// the given resolution plus systematic sampling (one uniform offset, then
// every M/size-th replica). Repeats are possible for dominant weights.
std::vector<std::size_t> weighted_systematic_sample(const std::vector<double>& weights, std::size_t size,
                                                    const CounterRng& rng, std::uint64_t weight_scale);

// Samples ceil(r) halfplanes by weight, decomposes their boundaries, then
// re-decomposes every cell whose crossing weight exceeds W/r with a sampled
// net from its conflict list until the bound holds everywhere.
Cutting build_cutting(const std::vector<Halfplane>& hs, const std::vector<double>& weights, double r,
                      std::uint64_t seed, const CuttingOptions& opts = {});

struct CuttingVerification {
    bool ok = false;
    double max_crossing_weight = 0.0;
    std::string failure;  // empty when ok
};

// Recomputes every conflict list from scratch, rechecks the crossing bound,
// and probes the partition property (area sum + random point location).
CuttingVerification verify_cutting(const Cutting& cut, const std::vector<Halfplane>& hs,
                                   const std::vector<double>& weights, double r);

// Worst-case union boundary complexity as a function of the number of shapes,
// plus the ambient dimension; halfplanes have U(l) = 2l in the plane.
struct UnionComplexityProfile {
    std::function<double(double)> u;
    int dimension = 2;
    std::string name;
};

UnionComplexityProfile halfplane_profile();

struct ShallowCellCount {
    long long count = 0;     // cells whose fully-containing weight is <= k
    double bound = 0.0;      // (r*k/W + 1)^d * U(W/max(k,1))
};

ShallowCellCount shallow_cell_count(const Cutting& cut, const std::vector<Halfplane>& hs,
                                    const std::vector<double>& weights, double k,
                                    const UnionComplexityProfile& profile);

struct DecayStatistics {
    // mean_exceeding[t-1] = mean number of first-stage cells whose crossing
    // weight is above t * W/r, averaged over the seeds.
    std::vector<double> mean_exceeding;
    double fitted_exponent = 0.0;  // least-squares slope of ln(mean) vs ln(t)
    std::size_t seeds = 0;
};

DecayStatistics decay_statistics(const std::vector<Halfplane>& hs, const std::vector<double>& weights, double r,
                                 const std::vector<std::uint64_t>& seeds, const CuttingOptions& opts = {});

}  // namespace multicover
