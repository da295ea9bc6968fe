#include "multicover/cluster_pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "multicover/notes.hpp"
#include "multicover/rng.hpp"

namespace multicover {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Picks the one cell that owns `p`. Interior points match a single cell; a
// point on a shared wall matches several, and a fixed infinitesimal offset
// (irrational slope, so it cannot stay on any wall) breaks the tie.
std::size_t assign_cell(Vec2 p, const std::vector<CuttingCell>& cells) {
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (cells[k].trap.contains(p, kContainTol)) candidates.push_back(k);
    if (candidates.empty()) throw InternalError("point escapes every cell of the cutting");
    if (candidates.size() == 1) return candidates.front();

    const double eps = 1e-7 * std::max({1.0, std::abs(p.x), std::abs(p.y)});
    const double phi = 0.6180339887498949;
    const Vec2 offsets[] = {{eps, eps * phi}, {-eps, -eps * phi}, {eps, -eps * phi}, {-eps, eps * phi}};
    for (const Vec2& d : offsets) {
        Vec2 q{p.x + d.x, p.y + d.y};
        for (std::size_t k : candidates) {
            if (cells[k].trap.contains(q, 0.0)) {
                std::ostringstream msg;
                msg << "point (" << p.x << "," << p.y << ") sits on a cell wall; offset picked cell " << k;
                notes::emit("cell-boundary-point", msg.str());
                return k;
            }
        }
    }
    notes::emit("cell-boundary-point", "offset probes stayed on walls; keeping lowest candidate");
    return candidates.front();
}

}  // namespace

CellInstance induced_cell_instance(const Cutting& cut,
                                   const MultiCoverInstance& residual_inst,
                                   const FractionalSolution& xprime) {
    if (residual_inst.repetition_allowed())
        throw InputError("the cell instance is defined for distinct-range covers");
    for (const auto& r : residual_inst.ranges())
        if (!r.halfplane) throw InputError("the cell instance needs halfplane ranges");

    const std::size_t ncells = cut.cells.size();

    WeightedRangeSet doubled;
    for (const auto& [id, w] : xprime.x) {
        double dw = 2.0 * w;
        if (dw >= 1.0) {
            std::ostringstream msg;
            msg << "doubled weight of range " << id << " is " << dw << "; the heavy threshold must stay below 1/4";
            throw InternalError(msg.str());
        }
        doubled.set(id, dw);
    }

    // Demands: each residual point charges its demand to the one cell that
    // owns it; a cell's demand is the max over its points.
    std::vector<std::vector<PointId>> owned(ncells);
    std::vector<int> demand(ncells, 0);
    for (const auto& p : residual_inst.points()) {
        if (!p.pos) throw InputError("the cell instance needs point coordinates");
        std::size_t k = assign_cell(*p.pos, cut.cells);
        owned[k].push_back(p.id);
        demand[k] = std::max(demand[k], p.demand);
    }

    // Covered-by relation and the doubled-weight coverage each cell enjoys.
    std::vector<RangeRecord> cell_ranges;
    std::vector<double> coverage(ncells, 0.0);
    for (const auto& r : residual_inst.ranges()) {
        RangeRecord nr;
        nr.id = r.id;
        double w = doubled.weight(r.id);
        for (std::size_t k = 0; k < ncells; ++k) {
            if (classify(*r.halfplane, cut.cells[k].trap) != CellRelation::kContains) continue;
            nr.members.push_back(static_cast<PointId>(k));
            coverage[k] += w;
        }
        cell_ranges.push_back(std::move(nr));
    }

    // A cell sees all of a contained point's fractional coverage except what
    // crossing boundaries carry, and that is capped by the crossing budget
    // <= 1/4; doubling therefore clears the demand with slack ~1/2.
    std::vector<PointRecord> cell_points;
    for (std::size_t k = 0; k < ncells; ++k) {
        if (demand[k] > 0 && coverage[k] + 1e-6 < static_cast<double>(demand[k])) {
            std::ostringstream msg;
            msg << "cell " << k << " demands " << demand[k] << " but the doubled weights only cover " << coverage[k];
            throw InternalError(msg.str());
        }
        cell_points.push_back(PointRecord{static_cast<PointId>(k), demand[k], std::nullopt});
    }

    return CellInstance{MultiCoverInstance(std::move(cell_points), std::move(cell_ranges), false), std::move(owned),
                        std::move(doubled)};
}

PipelineResult solve_multicover_union(const MultiCoverInstance& inst,
                                      const UnionComplexityProfile& profile,
                                      std::uint64_t seed,
                                      const PipelineOptions& opts) {
    if (inst.repetition_allowed())
        throw InputError("the cell-sampling solver needs distinct ranges; use the copies-allowed solver instead");
    if (!inst.all_geometric())
        throw InputError("the cell-sampling solver needs halfplane ranges");

    const auto t0 = std::chrono::steady_clock::now();
    PipelineResult res;
    PipelineReport& rep = res.report;
    rep.seed = seed;

    FractionalSolution lp = solve_lp(inst, opts.lp);
    rep.lp_ms = ms_since(t0);
    rep.f = lp.value;

    double stretch = 1.0;
    if (lp.value > 0.0) {
        double ratio = profile.u(lp.value) / lp.value;
        if (ratio > 0.0) stretch = std::max(1.0, std::log(ratio));
    }
    rep.c = opts.c_scale * stretch;
    rep.beta = opts.beta_scale / stretch;

    HeavySplit split = extract_heavy(lp, rep.beta);
    if (static_cast<double>(split.heavy.size()) > lp.value / rep.beta + 1e-6)
        throw InternalError("heavy set exceeds value/beta");
    rep.heavy_size = split.heavy.size();
    rep.f_prime = split.rest.value;
    rep.trace.heavy = split.heavy;
    rep.trace.seed = seed;

    for (RangeId id : split.heavy) res.cover.add(id);
    MultiCoverInstance open = residual(inst, res.cover);
    rep.residual_before_sample = total_demand(open);
    rep.trace.residual_before = rep.residual_before_sample;

    if (rep.residual_before_sample > 0) {
        if (!(split.rest.value > 0.0))
            throw InternalError("open demand is left without fractional weight");

        // Cutting over the surviving ranges, weighted by x'; the crossing
        // budget f'/max(1, 4f') = min(f', 1/4) never exceeds 1/4.
        std::vector<Halfplane> hs;
        std::vector<double> weights;
        std::vector<Vec2> pts;
        for (const auto& r : open.ranges()) {
            hs.push_back(*r.halfplane);
            weights.push_back(split.rest.x.weight(r.id));
        }
        for (const auto& p : open.points()) pts.push_back(*p.pos);

        std::vector<Line> lines;
        for (const auto& h : hs) lines.push_back(h.boundary());
        CuttingOptions copts = opts.cutting;
        copts.region = bounding_box(pts, lines);

        CounterRng root(seed, 77);
        const std::uint64_t cut_seed = root.bits_at(0);
        const std::uint64_t sample_seed = root.bits_at(1);

        const auto t_cut = std::chrono::steady_clock::now();
        Cutting cut = build_cutting(hs, weights, std::max(1.0, 4.0 * split.rest.value), cut_seed, copts);
        rep.cutting_ms = ms_since(t_cut);
        rep.cells = cut.cells.size();

        CellInstance cells = induced_cell_instance(cut, open, split.rest);

        rep.trace.sample = cx_sample(cells.doubled, rep.c, sample_seed, 0);
        rep.sample_size = rep.trace.sample.size();
        CoverSolution sampled;
        for (RangeId id : rep.trace.sample) sampled.add(id);

        MultiCoverInstance open_cells = residual(cells.instance, sampled);
        rep.residual_after_sample = total_demand(open_cells);
        CoverSolution completion = greedy_complete(open_cells);
        if (static_cast<long long>(completion.size()) > rep.residual_after_sample)
            throw InternalError("completion exceeds the open cell demand");
        rep.completion_size = completion.size();
        rep.trace.completion = completion.expanded();

        // The three pools are disjoint: heavy ids left the residual instance,
        // the completion only sees ranges the sample skipped.
        for (RangeId id : rep.trace.sample) {
            if (res.cover.contains(id)) throw InternalError("sampled range collides with the heavy set");
            res.cover.add(id);
        }
        for (RangeId id : rep.trace.completion) {
            if (res.cover.contains(id)) throw InternalError("completion range collides with an earlier stage");
            res.cover.add(id);
        }
    }
    rep.trace.residual_after = rep.residual_after_sample;

    FeasibilityReport feas = is_feasible_cover(inst, res.cover);
    if (!feas.feasible) {
        std::ostringstream msg;
        msg << "pipeline output misses demand";
        if (!feas.deficits.empty())
            msg << ": point " << feas.deficits.front().point << " got " << feas.deficits.front().got << " of "
                << feas.deficits.front().required;
        throw InternalError(msg.str());
    }

    rep.total_size = res.cover.size();
    if (rep.total_size != rep.heavy_size + rep.sample_size + rep.completion_size)
        throw InternalError("stage sizes disagree with the assembled cover");
    rep.total_ms = ms_since(t0);
    return res;
}

PipelineResult solve_multicover_geometric(const MultiCoverInstance& inst,
                                          std::uint64_t seed,
                                          const PipelineOptions& opts) {
    return solve_multicover_union(inst, halfplane_profile(), seed, opts);
}

}  // namespace multicover
