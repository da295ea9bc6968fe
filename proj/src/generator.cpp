#include "multicover/generator.hpp"

#include <cmath>

#include "multicover/notes.hpp"
#include "multicover/rng.hpp"

namespace multicover {

namespace {

constexpr int kMaxAttempts = 100;

// Feasibility floor per point: without copies a point may demand up to d_max
// distinct ranges; with copies one covering range suffices.
int coverage_floor(const GeneratorSpec& spec) { return spec.repetition ? 1 : spec.d_max; }

bool attempt_abstract(const GeneratorSpec& spec, CounterRng rng, std::vector<PointRecord>* pts,
                      std::vector<RangeRecord>* rngs) {
    std::vector<int> covered(static_cast<std::size_t>(spec.n), 0);
    rngs->clear();
    for (int j = 0; j < spec.m; ++j) {
        RangeRecord r;
        r.id = j;
        for (int i = 0; i < spec.n; ++i)
            if (rng.next_uniform() < spec.density) {
                r.members.push_back(i);
                ++covered[static_cast<std::size_t>(i)];
            }
        rngs->push_back(std::move(r));
    }
    pts->clear();
    for (int i = 0; i < spec.n; ++i) {
        if (covered[static_cast<std::size_t>(i)] < coverage_floor(spec)) return false;
        pts->push_back(PointRecord{i, static_cast<int>(rng.next_int(1, spec.d_max)), std::nullopt});
    }
    return true;
}

bool attempt_halfplane(const GeneratorSpec& spec, CounterRng rng, std::vector<PointRecord>* pts,
                       std::vector<RangeRecord>* rngs) {
    std::vector<Vec2> pos;
    for (int i = 0; i < spec.n; ++i)
        pos.push_back(Vec2{rng.next_uniform() * 2.0 - 1.0, rng.next_uniform() * 2.0 - 1.0});
    std::vector<Halfplane> hs;
    for (int j = 0; j < spec.m; ++j) {
        double ang = rng.next_uniform() * 6.283185307179586;
        Vec2 anchor{rng.next_uniform() * 2.0 - 1.0, rng.next_uniform() * 2.0 - 1.0};
        double a = std::cos(ang), b = std::sin(ang);
        hs.push_back(Halfplane::normalized(a, b, a * anchor.x + b * anchor.y));
    }
    pts->clear();
    for (int i = 0; i < spec.n; ++i) {
        int covered = 0;
        for (const auto& h : hs)
            if (h.contains(pos[static_cast<std::size_t>(i)])) ++covered;
        if (covered < coverage_floor(spec)) return false;
        pts->push_back(PointRecord{i, static_cast<int>(rng.next_int(1, spec.d_max)), pos[static_cast<std::size_t>(i)]});
    }
    rngs->clear();
    for (int j = 0; j < spec.m; ++j) rngs->push_back(RangeRecord{j, hs[static_cast<std::size_t>(j)], {}});
    return true;
}

bool attempt_disk(const GeneratorSpec& spec, CounterRng rng, std::vector<PointRecord>* pts,
                  std::vector<RangeRecord>* rngs) {
    std::vector<Vec2> pos;
    for (int i = 0; i < spec.n; ++i)
        pos.push_back(Vec2{rng.next_uniform() * 2.0 - 1.0, rng.next_uniform() * 2.0 - 1.0});
    std::vector<int> covered(static_cast<std::size_t>(spec.n), 0);
    rngs->clear();
    for (int j = 0; j < spec.m; ++j) {
        Vec2 center{rng.next_uniform() * 2.0 - 1.0, rng.next_uniform() * 2.0 - 1.0};
        double radius = 0.4 + 0.8 * rng.next_uniform();
        RangeRecord r;
        r.id = j;
        for (int i = 0; i < spec.n; ++i) {
            double dx = pos[static_cast<std::size_t>(i)].x - center.x;
            double dy = pos[static_cast<std::size_t>(i)].y - center.y;
            if (dx * dx + dy * dy <= radius * radius) {
                r.members.push_back(i);
                ++covered[static_cast<std::size_t>(i)];
            }
        }
        rngs->push_back(std::move(r));
    }
    pts->clear();
    for (int i = 0; i < spec.n; ++i) {
        if (covered[static_cast<std::size_t>(i)] < coverage_floor(spec)) return false;
        pts->push_back(PointRecord{i, static_cast<int>(rng.next_int(1, spec.d_max)), pos[static_cast<std::size_t>(i)]});
    }
    return true;
}

}  // namespace

MultiCoverInstance generate(const GeneratorSpec& spec) {
    if (spec.n < 0 || spec.m < 0) throw InputError("generator sizes must be nonnegative");
    if (spec.d_max < 1) throw InputError("d_max must be at least 1");
    if (!(spec.density >= 0.0) || !(spec.density <= 1.0)) throw InputError("density must lie in [0,1]");
    bool abstract = spec.kind == "abstract-random";
    bool halfplane = spec.kind == "halfplane-random";
    bool disk = spec.kind == "disk-random-materialized";
    if (!abstract && !halfplane && !disk) throw InputError("unknown generator kind \"" + spec.kind + "\"");

    CounterRng root(spec.seed, 0x67656eull);  // "gen"
    std::vector<PointRecord> pts;
    std::vector<RangeRecord> rngs;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        CounterRng rng = root.derive(static_cast<std::uint64_t>(attempt));
        bool ok = abstract    ? attempt_abstract(spec, rng, &pts, &rngs)
                  : halfplane ? attempt_halfplane(spec, rng, &pts, &rngs)
                              : attempt_disk(spec, rng, &pts, &rngs);
        if (ok) return MultiCoverInstance(std::move(pts), std::move(rngs), spec.repetition);
        notes::emit("generator-retry", "attempt " + std::to_string(attempt) + " of kind " + spec.kind +
                                           " left a point below the coverage floor");
    }
    throw BudgetError("generator could not reach the coverage floor in " + std::to_string(kMaxAttempts) +
                      " attempts; raise m or density, or lower d_max");
}

}  // namespace multicover
