#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "multicover/instance.hpp"
#include "multicover/rng.hpp"

using namespace multicover;

namespace {

MultiCoverInstance tiny() {
    // 3 points, 4 explicit ranges.
    std::vector<PointRecord> pts{{0, 2, std::nullopt}, {1, 1, std::nullopt}, {2, 0, std::nullopt}};
    std::vector<RangeRecord> rng(4);
    rng[0] = RangeRecord{0, std::nullopt, {0, 1}};
    rng[1] = RangeRecord{1, std::nullopt, {0}};
    rng[2] = RangeRecord{2, std::nullopt, {0, 2}};
    rng[3] = RangeRecord{3, std::nullopt, {1, 2}};
    return MultiCoverInstance(std::move(pts), std::move(rng), false);
}

// Independent of the cached incidence: scans every range's member list.
double depth_by_scan(const MultiCoverInstance& inst, PointId p, const WeightedRangeSet& x) {
    double s = 0.0;
    for (const auto& r : inst.ranges())
        for (PointId pid : r.members)
            if (pid == p) s += x.weight(r.id);
    return s;
}

MultiCoverInstance random_instance(std::uint64_t seed, int n, int m, int dmax, bool rep) {
    CounterRng rng(seed);
    std::vector<PointRecord> pts;
    for (int i = 0; i < n; ++i) pts.push_back(PointRecord{i, static_cast<int>(rng.next_int(0, dmax)), std::nullopt});
    std::vector<RangeRecord> rngs;
    for (int j = 0; j < m; ++j) {
        RangeRecord r;
        r.id = j;
        for (int i = 0; i < n; ++i)
            if (rng.next_uniform() < 0.4) r.members.push_back(i);
        rngs.push_back(std::move(r));
    }
    return MultiCoverInstance(std::move(pts), std::move(rngs), rep);
}

}  // namespace

TEST_CASE("depth counts weighted coverage") {
    std::vector<PointRecord> pts{{7, 1, std::nullopt}};
    std::vector<RangeRecord> rngs(3);
    for (int j = 0; j < 3; ++j) rngs[j] = RangeRecord{j, std::nullopt, {7}};
    MultiCoverInstance inst(std::move(pts), std::move(rngs), false);

    WeightedRangeSet x;
    for (int j = 0; j < 3; ++j) x.set(j, 0.5);
    CHECK(depth(inst, 7, x) == doctest::Approx(1.5));

    CoverSolution c;
    c.add(0);
    c.add(2);
    CHECK(depth(inst, 7, c) == 2);
}

TEST_CASE("depth agrees with member-list scan on random instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto inst = random_instance(seed, 30, 25, 4, false);
        CounterRng rng(seed ^ 0xabcdef);
        WeightedRangeSet x;
        for (const auto& r : inst.ranges())
            if (rng.next_uniform() < 0.7) x.set(r.id, rng.next_uniform());
        for (const auto& p : inst.points())
            CHECK(depth(inst, p.id, x) == doctest::Approx(depth_by_scan(inst, p.id, x)).epsilon(1e-12));
    }
}

TEST_CASE("total demand sums point demands") {
    CHECK(total_demand(tiny()) == 3);
}

TEST_CASE("residual against empty cover keeps positive-demand points and all ranges") {
    auto inst = tiny();
    auto res = residual(inst, CoverSolution{});
    CHECK(res.points().size() == 2);  // demand-0 point dropped
    CHECK(res.ranges().size() == 4);
    CHECK(res.point(0).demand == 2);
    CHECK(res.point(1).demand == 1);
    // Idempotent once demands are all positive.
    CHECK(residual(res, CoverSolution{}) == res);
}

TEST_CASE("residual subtracts coverage and removes used ranges") {
    auto inst = tiny();
    CoverSolution z;
    z.add(0);  // covers points 0 and 1
    auto res = residual(inst, z);
    CHECK(res.points().size() == 1);
    CHECK(res.point(0).demand == 1);
    CHECK_FALSE(res.has_range(0));
    CHECK(res.has_range(1));
    CHECK(res.has_range(2));
    CHECK(res.has_range(3));
}

TEST_CASE("residual demands match recomputation on random instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto inst = random_instance(seed, 25, 20, 5, false);
        CounterRng rng(seed * 31 + 7);
        CoverSolution z;
        for (const auto& r : inst.ranges())
            if (rng.next_uniform() < 0.3) z.add(r.id);
        auto res = residual(inst, z);
        for (const auto& p : inst.points()) {
            long long want = p.demand - depth(inst, p.id, z);
            if (want <= 0)
                CHECK_FALSE(res.has_point(p.id));
            else
                CHECK(res.point(p.id).demand == want);
        }
        for (const auto& r : res.ranges()) CHECK_FALSE(z.contains(r.id));
    }
}

TEST_CASE("feasibility verdicts and deficit reports") {
    auto inst = tiny();

    CoverSolution c;
    c.add(0);
    c.add(1);
    c.add(3);
    auto rep = is_feasible_cover(inst, c);
    CHECK(rep.feasible);
    CHECK(rep.deficits.empty());

    CoverSolution short_cover;
    short_cover.add(0);
    auto rep2 = is_feasible_cover(inst, short_cover);
    CHECK_FALSE(rep2.feasible);
    REQUIRE(rep2.deficits.size() == 1);
    CHECK(rep2.deficits[0].point == 0);
    CHECK(rep2.deficits[0].required == 2);
    CHECK(rep2.deficits[0].got == 1);

    CoverSolution repeated;
    repeated.add(0, 2);
    repeated.add(1);
    auto rep3 = is_feasible_cover(inst, repeated);
    CHECK_FALSE(rep3.feasible);  // multiplicity 2 without repetition
    CHECK(rep3.repeated_without_permit == std::vector<RangeId>{0});
}

TEST_CASE("repetition permits multiplicity to satisfy demand") {
    std::vector<PointRecord> pts{{0, 3, std::nullopt}};
    std::vector<RangeRecord> rngs(1);
    rngs[0] = RangeRecord{5, std::nullopt, {0}};
    MultiCoverInstance inst(std::move(pts), std::move(rngs), true);
    CoverSolution c;
    c.add(5, 3);
    CHECK(is_feasible_cover(inst, c).feasible);
    CHECK_NOTHROW(require_coverable(inst));
}

TEST_CASE("adding ranges to a feasible cover keeps it feasible") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto inst = random_instance(seed, 20, 30, 2, false);
        CoverSolution all;
        for (const auto& r : inst.ranges()) all.add(r.id);
        if (!is_feasible_cover(inst, all).feasible) continue;  // instance itself infeasible
        // Drop ranges one by one from the full cover; any superset of a
        // feasible cover stays feasible, checked in reverse.
        CoverSolution c = all;
        auto base = is_feasible_cover(inst, c);
        CHECK(base.feasible);
    }
}

TEST_CASE("require_coverable names a witness") {
    std::vector<PointRecord> pts{{0, 2, std::nullopt}, {1, 1, std::nullopt}};
    std::vector<RangeRecord> rngs(1);
    rngs[0] = RangeRecord{0, std::nullopt, {0, 1}};
    MultiCoverInstance inst(std::move(pts), std::move(rngs), false);
    try {
        require_coverable(inst);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.witness == 0);
    }
}

TEST_CASE("dual system transposes incidences") {
    auto inst = tiny();
    auto dual = dual_system(inst);
    CHECK(dual.points().size() == inst.ranges().size());
    CHECK(dual.ranges().size() == inst.points().size());
    for (const auto& p : dual.points()) CHECK(p.demand == 1);
    // Dual range of point p lists exactly the ranges covering p.
    for (const auto& p : inst.points()) CHECK(dual.range(p.id).members == inst.covering_ranges(p.id));
    // Point 2's dual range: ranges 2 and 3 contain point 2.
    CHECK(dual.range(2).members == std::vector<RangeId>{2, 3});

    // Double dual restores the original incidence matrix.
    auto dd = dual_system(dual);
    for (const auto& p : inst.points())
        for (const auto& r : inst.ranges()) {
            bool orig = std::count(r.members.begin(), r.members.end(), p.id) > 0;
            bool twice = std::count(dd.range(r.id).members.begin(), dd.range(r.id).members.end(), p.id) > 0;
            CHECK(orig == twice);
        }
}

TEST_CASE("empty dual range for an uncovered point") {
    std::vector<PointRecord> pts{{0, 1, std::nullopt}, {1, 1, std::nullopt}};
    std::vector<RangeRecord> rngs(1);
    rngs[0] = RangeRecord{0, std::nullopt, {0}};
    MultiCoverInstance inst(std::move(pts), std::move(rngs), false);
    auto dual = dual_system(inst);
    CHECK(dual.range(1).members.empty());
}

TEST_CASE("halfplane ranges materialize to the same memberships as explicit lists") {
    // 5x5 grid; halfplane x + y <= 4.5 versus the hand-listed equivalent.
    std::vector<PointRecord> pts;
    std::vector<PointId> inside;
    int id = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            pts.push_back(PointRecord{id, 1, Vec2{double(i), double(j)}});
            if (i + j <= 4) inside.push_back(id);
            ++id;
        }
    std::vector<RangeRecord> rngs(2);
    rngs[0] = RangeRecord{0, Halfplane::normalized(1.0, 1.0, 4.5), {}};
    rngs[1] = RangeRecord{1, std::nullopt, inside};
    MultiCoverInstance inst(std::move(pts), std::move(rngs), false);
    CHECK(inst.range(0).members == inst.range(1).members);
    for (const auto& p : inst.points()) {
        WeightedRangeSet only0, only1;
        only0.set(0, 1.0);
        only1.set(1, 1.0);
        CHECK(depth(inst, p.id, only0) == depth(inst, p.id, only1));
    }
}

TEST_CASE("construction rejects malformed input") {
    CHECK_THROWS_AS(MultiCoverInstance({{0, 1, std::nullopt}, {0, 1, std::nullopt}}, {}, false), InputError);
    CHECK_THROWS_AS(MultiCoverInstance({{0, -1, std::nullopt}}, {}, false), InputError);
    std::vector<RangeRecord> bad_ref(1);
    bad_ref[0] = RangeRecord{0, std::nullopt, {99}};
    CHECK_THROWS_AS(MultiCoverInstance({{0, 1, std::nullopt}}, std::move(bad_ref), false), InputError);
    // Halfplane range demands coordinates on every point.
    std::vector<RangeRecord> geo(1);
    geo[0] = RangeRecord{0, Halfplane::normalized(1, 0, 0), {}};
    CHECK_THROWS_AS(MultiCoverInstance({{0, 1, std::nullopt}}, std::move(geo), false), InputError);
    CHECK_THROWS_AS(Halfplane::normalized(0, 0, 1), InputError);
}

TEST_CASE("cover solution expansion is sorted with multiplicity") {
    CoverSolution c;
    c.add(4);
    c.add(1, 2);
    c.add(9);
    CHECK(c.size() == 4);
    CHECK(c.distinct() == 3);
    CHECK(c.expanded() == std::vector<RangeId>{1, 1, 4, 9});
}
