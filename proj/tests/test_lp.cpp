#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "multicover/lp.hpp"
#include "multicover/oracle.hpp"
#include "multicover/rng.hpp"

using namespace multicover;

namespace {

MultiCoverInstance explicit_instance(int n, int m, const std::vector<std::vector<PointId>>& members,
                                     const std::vector<int>& demands, bool rep = false) {
    std::vector<PointRecord> pts;
    for (int i = 0; i < n; ++i) pts.push_back(PointRecord{i, demands[static_cast<std::size_t>(i)], std::nullopt});
    std::vector<RangeRecord> rngs;
    for (int j = 0; j < m; ++j) rngs.push_back(RangeRecord{j, std::nullopt, members[static_cast<std::size_t>(j)]});
    return MultiCoverInstance(std::move(pts), std::move(rngs), rep);
}

MultiCoverInstance random_instance(std::uint64_t seed, int n, int m, int dmax, bool rep, double q = 0.5) {
    CounterRng rng(seed);
    for (;;) {
        std::vector<std::vector<PointId>> members(static_cast<std::size_t>(m));
        std::vector<int> cover_count(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i)
                if (rng.next_uniform() < q) {
                    members[static_cast<std::size_t>(j)].push_back(i);
                    ++cover_count[static_cast<std::size_t>(i)];
                }
        std::vector<int> demands(static_cast<std::size_t>(n));
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            demands[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_int(1, dmax));
            int cap = rep ? (cover_count[static_cast<std::size_t>(i)] > 0 ? demands[static_cast<std::size_t>(i)] : 0)
                          : cover_count[static_cast<std::size_t>(i)];
            if (cap < demands[static_cast<std::size_t>(i)]) ok = false;
        }
        if (ok) return explicit_instance(n, m, members, demands, rep);
    }
}

void check_feasible(const MultiCoverInstance& inst, const FractionalSolution& sol) {
    for (const auto& p : inst.points()) {
        double got = depth(inst, p.id, sol.x);
        CHECK(got >= p.demand - sol.tolerance - 1e-12);
    }
    for (const auto& [id, w] : sol.x) {
        CHECK(w >= 0.0);
        if (!inst.repetition_allowed()) CHECK(w <= 1.0 + 1e-12);
    }
}

}  // namespace

TEST_CASE("lp rows and columns mirror instance incidences") {
    auto inst = random_instance(7, 12, 9, 3, false);
    auto lp = build_lp(inst);
    CHECK(lp.cols.size() == inst.ranges().size());
    std::size_t positive = 0;
    for (const auto& p : inst.points())
        if (p.demand > 0) ++positive;
    CHECK(lp.rows.size() == positive);

    // Row sums equal covering counts; column sums equal member counts over
    // positive-demand points.
    long long triplets = 0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        CHECK(lp.row_cols[r].size() == inst.covering_ranges(lp.rows[r]).size());
        CHECK(lp.rhs[r] == inst.point(lp.rows[r]).demand);
        triplets += static_cast<long long>(lp.row_cols[r].size());
    }
    long long expected = 0;
    for (const auto& r : inst.ranges())
        for (PointId pid : r.members)
            if (inst.point(pid).demand > 0) ++expected;
    CHECK(triplets == expected);
}

TEST_CASE("one point with demand two and two covering ranges solves to both at one") {
    auto inst = explicit_instance(1, 2, {{0}, {0}}, {2});
    auto sol = solve_lp(inst);
    CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sol.x.weight(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.x.weight(1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("repetition drops the upper bounds") {
    auto inst = explicit_instance(1, 1, {{0}}, {3}, true);
    auto sol = solve_lp(inst);
    CHECK(sol.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(sol.x.weight(0) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("fractional optimum of the triangle system is 3/2") {
    auto inst = explicit_instance(3, 3, {{0, 1}, {1, 2}, {0, 2}}, {1, 1, 1});
    CHECK(lp_value(inst) == doctest::Approx(1.5).epsilon(1e-9));
    auto oracle = lp_vertex_oracle(inst);
    CHECK(oracle.value == Rational(3, 2));
}

TEST_CASE("zero demands give the empty solution") {
    auto inst = explicit_instance(2, 2, {{0}, {1}}, {0, 0});
    auto sol = solve_lp(inst);
    CHECK(sol.value == 0.0);
    CHECK(sol.x.empty());
}

TEST_CASE("infeasible instances name a witness point") {
    auto inst = explicit_instance(2, 1, {{0, 1}}, {2, 1});
    CHECK_THROWS_AS(solve_lp(inst), InfeasibleError);
    try {
        solve_lp(inst);
    } catch (const InfeasibleError& e) {
        CHECK(e.witness == 0);
    }
}

TEST_CASE("simplex matches the rational vertex oracle on random tiny instances") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        bool rep = seed % 4 == 0;
        auto inst = random_instance(seed * 131, 2 + int(seed % 7), 2 + int((seed * 3) % 7), 3, rep, 0.55);
        auto sol = solve_lp(inst);
        auto oracle = lp_vertex_oracle(inst);
        CHECK(sol.value == doctest::Approx(oracle.value.to_double()).epsilon(1e-6));
        check_feasible(inst, sol);
    }
}

TEST_CASE("doubling demands doubles the repetition optimum") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto base = random_instance(seed * 17, 10, 8, 3, true);
        std::vector<PointRecord> pts;
        for (const auto& p : base.points()) pts.push_back(PointRecord{p.id, 2 * p.demand, p.pos});
        std::vector<RangeRecord> rngs(base.ranges().begin(), base.ranges().end());
        for (auto& r : rngs) r.halfplane.reset();
        MultiCoverInstance doubled(std::move(pts), std::move(rngs), true);
        CHECK(lp_value(doubled) == doctest::Approx(2.0 * lp_value(base)).epsilon(1e-7));
    }
}

TEST_CASE("raising one demand never lowers the optimum") {
    auto inst = random_instance(404, 12, 10, 2, false);
    double before = lp_value(inst);
    std::vector<PointRecord> pts;
    for (const auto& p : inst.points())
        pts.push_back(PointRecord{p.id, p.demand + (p.id == 0 ? 1 : 0), p.pos});
    std::vector<RangeRecord> rngs(inst.ranges().begin(), inst.ranges().end());
    bool still_coverable = inst.covering_ranges(0).size() >= std::size_t(inst.point(0).demand + 1);
    if (still_coverable) {
        MultiCoverInstance bumped(std::move(pts), std::move(rngs), false);
        CHECK(lp_value(bumped) >= before - 1e-9);
    }
}

TEST_CASE("solutions satisfy every row within the declared tolerance") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = random_instance(seed * 211, 40, 25, 6, seed % 2 == 0, 0.45);
        auto sol = solve_lp(inst);
        CHECK(sol.tolerance == 1e-9);
        check_feasible(inst, sol);
    }
}

TEST_CASE("iterative method lands within a percent of the exact optimum") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto inst = random_instance(seed * 37 + 5, 60, 35, 5, seed % 3 == 0, 0.35);
        LpOptions exact;
        LpOptions iterative;
        iterative.method = LpMethod::kIterative;
        double f = solve_lp(inst, exact).value;
        auto sol = solve_lp(inst, iterative);
        check_feasible(inst, sol);
        CHECK(sol.value <= (1.0 + iterative.eps_opt_iterative) * f + 1e-9);
        CHECK(sol.value >= f - 1e-6);
    }
}

TEST_CASE("dump is row-major triplets with named rows and columns") {
    auto inst = explicit_instance(2, 2, {{0, 1}, {1}}, {1, 2});
    auto lp = build_lp(inst);
    std::string text = dump_lp(lp);
    std::istringstream in(text);
    std::string tag;
    std::size_t rows, cols;
    std::string upper;
    in >> tag >> rows >> cols >> upper;
    CHECK(tag == "lp");
    CHECK(rows == 2);
    CHECK(cols == 2);
    CHECK(upper == "1");
    int acount = 0;
    std::string line;
    int last_row = -1;
    while (std::getline(in, line)) {
        if (line.rfind("a ", 0) == 0) {
            std::istringstream ls(line);
            std::string a;
            int r, c, v;
            ls >> a >> r >> c >> v;
            CHECK(v == 1);
            CHECK(r >= last_row);  // row-major
            last_row = r;
            ++acount;
        }
    }
    CHECK(acount == 3);
}
