#include "multicover/shallow_cutting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "multicover/notes.hpp"

namespace multicover {

bool within_crossing_budget(double crossing_weight, double total_weight, double r) {
    double threshold = total_weight / r;
    return crossing_weight <= threshold + 1e-9 * (1.0 + threshold);
}

std::vector<std::size_t> weighted_systematic_sample(const std::vector<double>& weights, std::size_t size,
                                                    const CounterRng& rng, std::uint64_t weight_scale) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("sampling weights must be finite and nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw InputError("sampling requires positive total weight");

    // Replicate: every positive weight gets at least one slot.
    std::vector<std::uint64_t> reps(weights.size(), 0);
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        reps[i] = std::max<std::uint64_t>(
            1, static_cast<std::uint64_t>(std::llround(weights[i] / total * static_cast<double>(weight_scale))));
        m += reps[i];
    }
    if (size == 0) return {};
    if (size > m) size = static_cast<std::size_t>(m);

    const double step = static_cast<double>(m) / static_cast<double>(size);
    const double offset = rng.uniform_at(0) * step;

    std::vector<std::size_t> picked;
    picked.reserve(size);
    std::size_t idx = 0;
    std::uint64_t consumed = 0;  // replicas strictly before entry idx
    for (std::size_t j = 0; j < size; ++j) {
        std::uint64_t pos = static_cast<std::uint64_t>(offset + static_cast<double>(j) * step);
        if (pos >= m) pos = m - 1;
        while (idx + 1 < weights.size() && consumed + reps[idx] <= pos) consumed += reps[idx++];
        picked.push_back(idx);
    }
    return picked;
}

namespace {

std::vector<double> unit_or(const std::vector<double>& weights, std::size_t n) {
    if (weights.empty()) return std::vector<double>(n, 1.0);
    if (weights.size() != n) throw InputError("weight vector length must match the halfplane count");
    return weights;
}

// Conflict list of `t` restricted to candidate halfplane indices.
std::pair<std::vector<int>, double> conflicts_among(const Trapezoid& t, const std::vector<Halfplane>& hs,
                                                    const std::vector<double>& w, const std::vector<int>& candidates) {
    std::vector<int> out;
    double weight = 0.0;
    for (int i : candidates) {
        if (line_crosses_interior(hs[static_cast<std::size_t>(i)].boundary(), t)) {
            out.push_back(i);
            weight += w[static_cast<std::size_t>(i)];
        }
    }
    return {out, weight};
}

}  // namespace

Cutting build_cutting(const std::vector<Halfplane>& hs, const std::vector<double>& weights_in, double r,
                      std::uint64_t seed, const CuttingOptions& opts) {
    if (hs.empty()) throw InputError("cutting construction needs at least one halfplane");
    if (!(r >= 1.0)) throw InputError("cutting parameter r must be at least 1");
    std::vector<double> w = unit_or(weights_in, hs.size());
    double total = 0.0;
    for (double x : w) total += x;
    if (!(total > 0.0)) throw InputError("cutting construction needs positive total weight");

    Cutting cut;
    cut.r = r;
    cut.total_weight = total;
    cut.seed = seed;

    std::vector<Line> all_lines;
    all_lines.reserve(hs.size());
    for (const auto& h : hs) all_lines.push_back(h.boundary());
    cut.box = opts.region ? *opts.region : bounding_box({}, all_lines);

    CounterRng base(seed, 0);

    const std::size_t sample_size = static_cast<std::size_t>(std::ceil(r));
    auto stage1 = weighted_systematic_sample(w, sample_size, base.derive(1), opts.weight_scale);
    std::vector<Line> sampled_lines;
    sampled_lines.reserve(stage1.size());
    for (std::size_t i : stage1) sampled_lines.push_back(hs[i].boundary());

    std::vector<int> everything(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) everything[i] = static_cast<int>(i);

    auto first = trapezoid_decomposition(sampled_lines, box_region(cut.box));
    cut.first_stage_cells = first.size();

    for (std::size_t ci = 0; ci < first.size(); ++ci) {
        auto [conf, cw] = conflicts_among(first[ci], hs, w, everything);
        if (within_crossing_budget(cw, total, r)) {
            cut.cells.push_back(CuttingCell{first[ci], std::move(conf), cw, -1});
            continue;
        }

        // Patch: re-decompose with a net sampled from the conflict list until
        // every sub-cell is within budget. Sub-cell conflicts are recomputed
        // against the full input: the crossing predicate has a span-relative
        // tolerance, so a line grazing the parent can still cross a sub-cell.
        const double threshold = total / r;
        const int excess = static_cast<int>(std::ceil(cw / threshold - 1e-12));
        const std::size_t net_size = static_cast<std::size_t>(
            std::ceil(opts.net_constant * excess * std::log(static_cast<double>(excess) + 1.0)));

        std::vector<double> conf_weights;
        conf_weights.reserve(conf.size());
        for (int i : conf) conf_weights.push_back(w[static_cast<std::size_t>(i)]);

        bool patched = false;
        for (int attempt = 0; attempt < opts.max_resamples; ++attempt) {
            std::vector<Line> net;
            if (net_size >= conf.size()) {
                for (int i : conf) net.push_back(hs[static_cast<std::size_t>(i)].boundary());
            } else {
                auto picks = weighted_systematic_sample(conf_weights, net_size,
                                                        base.derive(1000 + 512 * ci + static_cast<std::size_t>(attempt)),
                                                        opts.weight_scale);
                for (std::size_t k : picks) net.push_back(hs[static_cast<std::size_t>(conf[k])].boundary());
            }

            auto sub = trapezoid_decomposition(net, first[ci]);
            std::vector<CuttingCell> accepted;
            bool ok = true;
            for (const auto& st : sub) {
                auto [sconf, scw] = conflicts_among(st, hs, w, everything);
                if (!within_crossing_budget(scw, total, r)) {
                    ok = false;
                    break;
                }
                accepted.push_back(CuttingCell{st, std::move(sconf), scw, static_cast<int>(ci)});
            }
            if (!ok) continue;
            for (auto& cell : accepted) cut.cells.push_back(std::move(cell));
            cut.patches.push_back(PatchRecord{static_cast<int>(ci), excess, static_cast<int>(net.size()), attempt + 1});
            patched = true;
            break;
        }
        if (!patched)
            throw BudgetError("cell " + std::to_string(ci) + " with excess " + std::to_string(excess) +
                              " still violates the crossing bound after " + std::to_string(opts.max_resamples) +
                              " nets");
    }
    return cut;
}

CuttingVerification verify_cutting(const Cutting& cut, const std::vector<Halfplane>& hs,
                                   const std::vector<double>& weights_in, double r) {
    CuttingVerification v;
    std::vector<double> w = unit_or(weights_in, hs.size());
    double total = 0.0;
    for (double x : w) total += x;

    std::vector<int> everything(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) everything[i] = static_cast<int>(i);

    double area = 0.0;
    for (std::size_t ci = 0; ci < cut.cells.size(); ++ci) {
        const auto& cell = cut.cells[ci];
        auto [conf, cw] = conflicts_among(cell.trap, hs, w, everything);
        if (conf != cell.conflict || std::abs(cw - cell.crossing_weight) > 1e-6 * (1.0 + std::abs(cw))) {
            v.failure = "stored conflict list of cell " + std::to_string(ci) + " disagrees with recomputation";
            return v;
        }
        v.max_crossing_weight = std::max(v.max_crossing_weight, cw);
        if (!within_crossing_budget(cw, total, r)) {
            v.failure = "cell " + std::to_string(ci) + " crosses weight " + std::to_string(cw) +
                        " above the budget " + std::to_string(total / r);
            return v;
        }
        area += cell.trap.area();
    }

    const Trapezoid region = box_region(cut.box);
    if (std::abs(area - region.area()) > kAreaRelTol * region.area()) {
        v.failure = "cell areas sum to " + std::to_string(area) + " but the region has area " +
                    std::to_string(region.area());
        return v;
    }

    CounterRng probe_rng(cut.seed, 0xabcdef);
    for (int probe = 0; probe < 1000; ++probe) {
        Vec2 p{cut.box.xmin + cut.box.width() * probe_rng.uniform_at(static_cast<std::uint64_t>(2 * probe)),
               cut.box.ymin + cut.box.height() * probe_rng.uniform_at(static_cast<std::uint64_t>(2 * probe + 1))};
        int owners = 0;
        for (const auto& cell : cut.cells)
            if (cell.trap.contains(p, 1e-9)) ++owners;
        if (owners < 1) {
            v.failure = "probe point lies in no cell";
            return v;
        }
    }

    v.ok = true;
    return v;
}

UnionComplexityProfile halfplane_profile() {
    UnionComplexityProfile p;
    p.u = [](double l) { return 2.0 * l; };
    p.dimension = 2;
    p.name = "halfplane";
    return p;
}

ShallowCellCount shallow_cell_count(const Cutting& cut, const std::vector<Halfplane>& hs,
                                    const std::vector<double>& weights_in, double k,
                                    const UnionComplexityProfile& profile) {
    if (k < 0.0) throw InputError("depth threshold must be nonnegative");
    std::vector<double> w = unit_or(weights_in, hs.size());

    ShallowCellCount res;
    for (const auto& cell : cut.cells)
        if (cell_depth(cell.trap, hs, w) <= k + 1e-9) ++res.count;

    const double wr = cut.total_weight;
    res.bound = std::pow(cut.r * k / wr + 1.0, profile.dimension) * profile.u(wr / std::max(k, 1.0));
    return res;
}

DecayStatistics decay_statistics(const std::vector<Halfplane>& hs, const std::vector<double>& weights_in, double r,
                                 const std::vector<std::uint64_t>& seeds, const CuttingOptions& opts) {
    if (hs.empty()) throw InputError("decay statistics need at least one halfplane");
    std::vector<double> w = unit_or(weights_in, hs.size());
    double total = 0.0;
    for (double x : w) total += x;
    const double threshold = total / r;

    std::vector<Line> all_lines;
    for (const auto& h : hs) all_lines.push_back(h.boundary());
    const BoundingBox box = opts.region ? *opts.region : bounding_box({}, all_lines);

    std::vector<int> everything(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) everything[i] = static_cast<int>(i);

    DecayStatistics stats;
    stats.seeds = seeds.size();
    std::vector<long long> totals;  // totals[t-1] = #cells (summed over seeds) above t * threshold
    for (std::uint64_t seed : seeds) {
        CounterRng base(seed, 0);
        auto stage1 = weighted_systematic_sample(w, static_cast<std::size_t>(std::ceil(r)), base.derive(1),
                                                 opts.weight_scale);
        std::vector<Line> lines;
        for (std::size_t i : stage1) lines.push_back(hs[i].boundary());
        auto cells = trapezoid_decomposition(lines, box_region(box));
        for (const auto& cell : cells) {
            auto [conf, cw] = conflicts_among(cell, hs, w, everything);
            (void)conf;
            int levels = static_cast<int>(std::floor(cw / threshold - 1e-12));  // cw > t*threshold for t <= levels
            if (levels <= 0) continue;
            if (static_cast<std::size_t>(levels) > totals.size()) totals.resize(static_cast<std::size_t>(levels), 0);
            for (int t = 1; t <= levels; ++t) ++totals[static_cast<std::size_t>(t - 1)];
        }
    }

    stats.mean_exceeding.reserve(totals.size());
    for (long long count : totals)
        stats.mean_exceeding.push_back(static_cast<double>(count) / std::max<std::size_t>(1, seeds.size()));

    // Least-squares slope of ln(mean) against ln(t) over positive entries.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int pts = 0;
    for (std::size_t t = 1; t <= stats.mean_exceeding.size(); ++t) {
        double m = stats.mean_exceeding[t - 1];
        if (m <= 0.0) continue;
        double lx = std::log(static_cast<double>(t));
        double ly = std::log(m);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++pts;
    }
    if (pts >= 2 && sxx * pts - sx * sx > 1e-12)
        stats.fitted_exponent = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
    return stats;
}

}  // namespace multicover
