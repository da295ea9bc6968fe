#include "multicover/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "multicover/rng.hpp"

namespace multicover {

HeavySplit extract_heavy(const FractionalSolution& x, double beta) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw InputError("heavy threshold must lie in (0,1)");
    HeavySplit split;
    split.rest.tolerance = x.tolerance;
    for (const auto& [id, w] : x.x) {
        if (w >= beta) {
            split.heavy.push_back(id);
        } else {
            split.rest.x.set(id, w);
            split.rest.value += w;
        }
    }
    return split;
}

std::vector<RangeId> cx_sample(const WeightedRangeSet& x, double c, std::uint64_t seed, std::uint64_t trial) {
    if (!(c > 0.0)) throw InputError("sampling multiplier must be positive");
    CounterRng rng(seed, trial);
    std::vector<RangeId> picked;
    for (const auto& [id, w] : x) {
        double p = c * w;
        if (p >= 1.0 || rng.uniform_at(static_cast<std::uint64_t>(id)) < p) picked.push_back(id);
    }
    return picked;
}

double tail_bound(double c, int d) {
    if (c < 4.0) throw InputError("tail bound requires a sampling multiplier of at least 4");
    if (d < 1) throw InputError("tail bound requires demand at least 1");
    return std::exp(-c * static_cast<double>(d) / 4.0);
}

CoverSolution greedy_complete(const MultiCoverInstance& residual) {
    CoverSolution cover;
    for (const auto& p : residual.points()) {
        if (p.demand <= 0) continue;
        const auto& covering = residual.covering_ranges(p.id);  // ascending ids
        long long credit = 0;
        for (RangeId rid : covering)
            credit += residual.repetition_allowed() ? cover.multiplicity(rid) : (cover.contains(rid) ? 1 : 0);
        long long need = p.demand - credit;
        for (RangeId rid : covering) {
            if (need <= 0) break;
            if (cover.contains(rid)) continue;
            cover.add(rid);
            --need;
        }
        if (need > 0) {
            if (residual.repetition_allowed() && !covering.empty()) {
                cover.add(covering.front(), static_cast<int>(need));
            } else {
                throw InfeasibleError("completion cannot reach demand " + std::to_string(p.demand) + " of point " +
                                          std::to_string(p.id),
                                      p.id);
            }
        }
    }
    return cover;
}

ResidualCheckResult expected_residual_check(
    const std::function<std::pair<MultiCoverInstance, WeightedRangeSet>(std::uint64_t)>& sampler,
    const SamplingParameters& params, long long trials) {
    if (params.K < 1.0) throw InputError("demand-profile base K must be at least 1");
    ResidualCheckResult res;
    res.trials = trials;
    res.c_used = std::max(params.c, 4.0 + 4.0 * std::log(params.K));
    if (trials <= 0) return res;

    double sum = 0.0, sumsq = 0.0;
    for (long long t = 0; t < trials; ++t) {
        auto [inst, x] = sampler(static_cast<std::uint64_t>(t));
        auto picked = cx_sample(x, res.c_used, params.seed, static_cast<std::uint64_t>(t));
        CoverSolution chosen;
        for (RangeId id : picked) chosen.add(id);
        long long open = 0;
        for (const auto& p : inst.points()) open += std::max(0LL, static_cast<long long>(p.demand) - depth(inst, p.id, chosen));
        sum += static_cast<double>(open);
        sumsq += static_cast<double>(open) * static_cast<double>(open);
    }
    res.mean_residual = sum / static_cast<double>(trials);
    double var = std::max(0.0, sumsq / static_cast<double>(trials) - res.mean_residual * res.mean_residual);
    res.stddev = std::sqrt(var);
    return res;
}

}  // namespace multicover
