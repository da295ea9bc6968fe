#include "multicover/vc_transform.hpp"

#include <algorithm>
#include <cmath>

#include "multicover/notes.hpp"
#include "multicover/rng.hpp"

namespace multicover {

std::vector<PrefixGroup> split_inequalities(const MultiCoverInstance& inst, const FractionalSolution& x) {
    for (const auto& [id, w] : x.x)
        if (w >= 0.25) throw InputError("inequality splitting requires every weight below 1/4");

    std::vector<PrefixGroup> groups;
    for (const auto& p : inst.points()) {
        if (p.demand <= 0) continue;
        double sum = 0.0;
        RangeId first = -1;
        RangeId last = -1;
        for (RangeId rid : inst.covering_ranges(p.id)) {  // ascending: the fixed numbering
            if (first < 0) first = rid;
            last = rid;
            sum += x.x.weight(rid);
            if (sum >= 0.5) {
                groups.push_back(PrefixGroup{p.id, first, last, sum});
                sum = 0.0;
                first = -1;
            }
        }
        // Leftover weight below 1/2 is discarded; it cannot form a chunk.
    }
    return groups;
}

TransformedBuild build_transformed_system(const MultiCoverInstance& inst, const FractionalSolution& x,
                                          const std::vector<PrefixGroup>& groups) {
    TransformedBuild out;
    out.system.pairs = groups;
    for (const auto& r : inst.ranges()) out.system.numbering.push_back(r.id);

    for (const auto& r : inst.ranges()) {
        auto& members = out.system.ranges[r.id];
        for (std::size_t k = 0; k < groups.size(); ++k) {
            const PrefixGroup& g = groups[k];
            if (r.id < g.alpha || r.id > g.beta) continue;
            const auto& mem = r.members;
            if (std::binary_search(mem.begin(), mem.end(), g.point)) members.push_back(k);
        }
    }

    for (const auto& [id, w] : x.x) {
        out.witness.set(id, 2.0 * w);
        out.witness_value += 2.0 * w;
    }

    // Doubled chunk weight is >= 1; recompute from the pair system so a
    // membership bug cannot hide behind the construction.
    std::vector<double> covered(groups.size(), 0.0);
    for (const auto& [id, pair_ids] : out.system.ranges)
        for (std::size_t k : pair_ids) covered[k] += out.witness.weight(id);
    for (std::size_t k = 0; k < groups.size(); ++k)
        if (covered[k] < 1.0 - 1e-9)
            throw InternalError("doubled weights leave a split pair fractionally uncovered");
    return out;
}

std::vector<std::size_t> uncovered_pairs(const TransformedSystem& system, const std::vector<RangeId>& chosen) {
    std::vector<char> hit(system.pairs.size(), 0);
    for (RangeId id : chosen) {
        auto it = system.ranges.find(id);
        if (it == system.ranges.end()) continue;
        for (std::size_t k : it->second) hit[k] = 1;
    }
    std::vector<std::size_t> missing;
    for (std::size_t k = 0; k < hit.size(); ++k)
        if (!hit[k]) missing.push_back(k);
    return missing;
}

namespace {

// Open demands under `cover`; ascending-id distinct top-up for each.
void top_up(const MultiCoverInstance& inst, CoverSolution& cover, std::vector<RangeId>& completion) {
    for (const auto& p : inst.points()) {
        long long need = p.demand - depth(inst, p.id, cover);
        if (need <= 0) continue;
        notes::emit("vc-top-up", "point " + std::to_string(p.id) + " short by " + std::to_string(need));
        for (RangeId rid : inst.covering_ranges(p.id)) {
            if (need <= 0) break;
            if (cover.contains(rid)) continue;
            cover.add(rid);
            completion.push_back(rid);
            --need;
        }
        if (need > 0) throw InternalError("top-up ran out of distinct covering ranges");
    }
}

}  // namespace

VcResult solve_multicover_vc(const MultiCoverInstance& inst, int delta_star, double alpha, std::uint64_t seed,
                             const VcOptions& opts) {
    if (inst.repetition_allowed()) throw InputError("use the repetition sampler for instances that allow copies");
    if (delta_star < 1) throw InputError("dual dimension parameter must be at least 1");
    if (!(alpha > 0.0)) throw InputError("sampling constant must be positive");

    VcResult res;
    res.trace.seed = seed;
    FractionalSolution x = solve_lp(inst, opts.lp);
    res.lp_value = x.value;

    auto split = extract_heavy(x, 0.25);
    res.trace.heavy = split.heavy;
    CoverSolution heavy_cover;
    for (RangeId id : split.heavy) heavy_cover.add(id);

    MultiCoverInstance rest = residual(inst, heavy_cover);
    res.trace.residual_before = total_demand(rest);

    if (res.trace.residual_before == 0) {
        res.cover = heavy_cover;
        res.trace.residual_after = 0;
        return res;
    }

    auto groups = split_inequalities(rest, split.rest);
    for (const auto& p : rest.points()) {
        long long h = std::count_if(groups.begin(), groups.end(),
                                    [&](const PrefixGroup& g) { return g.point == p.id; });
        if (h < p.demand)
            notes::emit("split-shortfall", "point " + std::to_string(p.id) + " got " + std::to_string(h) +
                                               " chunks for demand " + std::to_string(p.demand));
    }
    auto build = build_transformed_system(rest, split.rest, groups);

    const double rate = alpha * static_cast<double>(delta_star) * std::log(x.value + 2.0);
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        auto sample = cx_sample(split.rest.x, rate, seed, static_cast<std::uint64_t>(attempt));
        if (!uncovered_pairs(build.system, sample).empty()) continue;

        res.trace.sample = sample;
        res.trace.trial = attempt;
        res.cover = heavy_cover;
        for (RangeId id : sample) res.cover.add(id);
        // Covering every pair yields distinct ranges per point, so this can
        // only fire after a logged split shortfall.
        top_up(inst, res.cover, res.trace.completion);
        res.trace.residual_after = 0;
        auto report = is_feasible_cover(inst, res.cover);
        if (!report.feasible) throw InternalError("rounded cover failed final verification");
        return res;
    }
    throw BudgetError("pair-system sampling failed after " + std::to_string(opts.max_attempts) + " attempts");
}

VcResult solve_with_repetition(const MultiCoverInstance& inst, int delta_star, std::uint64_t seed,
                               const RepetitionOptions& opts) {
    if (!inst.repetition_allowed()) throw InputError("repetition sampling requires an instance that allows copies");
    if (delta_star < 1) throw InputError("dual dimension parameter must be at least 1");

    VcResult res;
    res.trace.seed = seed;
    FractionalSolution x = solve_lp(inst, opts.lp);
    res.lp_value = x.value;
    res.trace.residual_before = total_demand(inst);
    if (res.trace.residual_before == 0) return res;

    const double f = x.value;
    std::vector<RangeId> ids;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& [id, w] : x.x) {
        acc += w / f;
        ids.push_back(id);
        cumulative.push_back(acc);
    }
    if (!cumulative.empty()) cumulative.back() = 1.0;  // guard the float tail

    const long long draws = static_cast<long long>(
        std::ceil(opts.draw_multiplier * static_cast<double>(delta_star) * f * std::log(f + 2.0)));
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        CounterRng rng(seed, static_cast<std::uint64_t>(attempt));
        CoverSolution cover;
        std::vector<RangeId> drawn;
        for (long long t = 0; t < draws; ++t) {
            double u = rng.uniform_at(static_cast<std::uint64_t>(t));
            std::size_t k = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            if (k >= ids.size()) k = ids.size() - 1;
            cover.add(ids[k]);
            drawn.push_back(ids[k]);
        }
        if (!is_feasible_cover(inst, cover).feasible) continue;
        res.cover = cover;
        res.trace.sample = drawn;
        res.trace.trial = attempt;
        res.trace.residual_after = 0;
        return res;
    }
    throw BudgetError("repetition sampling failed after " + std::to_string(opts.max_attempts) + " attempts");
}

}  // namespace multicover
