#pragma once

#include <cstdint>
#include <vector>

#include "multicover/instance.hpp"
#include "multicover/lp.hpp"
#include "multicover/rounding.hpp"
#include "multicover/shallow_cutting.hpp"

namespace multicover {

// Multi-cover instance induced on the cells of a cutting. Cell k becomes
// point k; a range covers a cell iff its halfplane contains the whole cell
// closure and its boundary misses the cell interior; a cell's demand is the
// largest demand among the residual points assigned to it. Every residual
// point is assigned to exactly one cell (boundary points resolved by a
// deterministic infinitesimal offset, logged under "cell-boundary-point").
struct CellInstance {
    MultiCoverInstance instance;                    // cells as points, explicit member lists
    std::vector<std::vector<PointId>> cell_points;  // original point ids assigned to each cell
    WeightedRangeSet doubled;                       // 2 * x' over the surviving ranges
};

// Builds the cell instance for `cut` over `residual_inst` (a halfplane
// instance whose demands are already the post-heavy residual demands) and
// returns the doubled weights. A cell loses at most the cutting's crossing
// budget <= 1/4 of any contained point's fractional coverage, so doubling
// restores feasibility; this is machine-checked per cell (covering weight
// under 2x' >= demand) and every doubled weight must stay below 1, both
// throwing InternalError with a witness on failure. Expects `cut` to have
// been built over exactly residual_inst's ranges with weights x'.
CellInstance induced_cell_instance(const Cutting& cut,
                                   const MultiCoverInstance& residual_inst,
                                   const FractionalSolution& xprime);

// Knobs for the cell-sampling solver. The sampling multiplier is
// c_scale * max(1, ln(U(f)/f)) and the heavy threshold is
// beta_scale / max(1, ln(U(f)/f)), so profiles with near-linear union
// complexity keep c = c_scale and beta = beta_scale. The defaults pair
// c = 12 with beta = 1/(2c).
struct PipelineOptions {
    double c_scale = 12.0;
    double beta_scale = 1.0 / 24.0;
    CuttingOptions cutting;  // patching knobs; the region is derived from the instance
    LpOptions lp;
};

// One run's accounting: fractional values, stage sizes, and timings. The
// three stages draw from disjoint range pools, so total_size is exactly
// heavy_size + sample_size + completion_size.
struct PipelineReport {
    double f = 0.0;        // LP optimum
    double f_prime = 0.0;  // fractional weight surviving heavy extraction
    double c = 0.0;        // sampling multiplier actually used
    double beta = 0.0;     // heavy threshold actually used
    std::size_t heavy_size = 0;
    std::size_t sample_size = 0;
    std::size_t completion_size = 0;
    std::size_t total_size = 0;
    long long residual_before_sample = 0;  // demand left open by the heavy set
    long long residual_after_sample = 0;   // cell demand the completion had to close
    std::size_t cells = 0;
    std::uint64_t seed = 0;
    double lp_ms = 0.0;
    double cutting_ms = 0.0;
    double total_ms = 0.0;
    RoundingTrace trace;
};

struct PipelineResult {
    CoverSolution cover;
    PipelineReport report;
};

// Cell-sampling solver for halfplane instances without copies: solve the LP,
// pull ranges with weight >= beta into the cover, build a cutting over the
// remaining weights with crossing budget min(f', 1/4), sample each remaining
// range with probability min(1, c * 2x'_i), close any still-open cell demand
// greedily, and return the union (verified feasible; range ids lift back
// unchanged). Throws InputError for non-halfplane or copies-allowed
// instances and InfeasibleError when demands cannot be met.
PipelineResult solve_multicover_geometric(const MultiCoverInstance& inst,
                                          std::uint64_t seed,
                                          const PipelineOptions& opts = {});

// Same pipeline with c and beta driven by the profile's union-complexity
// bound. The halfplane profile (U(l) = 2l) yields ln(U(f)/f) < 1, so the
// knobs collapse to c_scale and beta_scale and the run is bit-identical to
// solve_multicover_geometric under the same seed.
PipelineResult solve_multicover_union(const MultiCoverInstance& inst,
                                      const UnionComplexityProfile& profile,
                                      std::uint64_t seed,
                                      const PipelineOptions& opts = {});

}  // namespace multicover
