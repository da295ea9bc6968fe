#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multicover/bench.hpp"

using namespace multicover;

namespace {

MultiCoverInstance abstract_inst(bool repetition = false) {
    GeneratorSpec spec{"abstract-random", 14, 10, 2, 0.5, repetition, 21};
    return generate(spec);
}

MultiCoverInstance halfplane_inst() {
    GeneratorSpec spec{"halfplane-random", 25, 12, 2, 0.5, false, 8};
    return generate(spec);
}

}  // namespace

TEST_CASE("params parse strictly") {
    MethodParams d = parse_params("");
    CHECK(d.delta_star == 3);
    CHECK(d.alpha == 3.0);
    CHECK(d.profile == "halfplane");

    MethodParams p = parse_params(
        "delta_star=4,alpha=1.5,draw_multiplier=2,max_attempts=16,c_scale=10,beta_scale=0.05,"
        "node_budget=5000,profile=quadratic");
    CHECK(p.delta_star == 4);
    CHECK(p.alpha == 1.5);
    CHECK(p.draw_multiplier == 2.0);
    CHECK(p.max_attempts == 16);
    CHECK(p.c_scale == 10.0);
    CHECK(p.beta_scale == 0.05);
    CHECK(p.node_budget == 5000);
    CHECK(p.profile == "quadratic");

    CHECK_THROWS_AS(parse_params("volume=11"), InputError);
    CHECK_THROWS_AS(parse_params("alpha"), InputError);
    CHECK_THROWS_AS(parse_params("alpha=fast"), InputError);
    CHECK_THROWS_AS(parse_params("alpha=1,,beta_scale=0.1"), InputError);
    CHECK_THROWS_AS(parse_params("=3"), InputError);
    CHECK_THROWS_AS(parse_params("alpha=1.5x"), InputError);
}

TEST_CASE("profiles are registered by name") {
    CHECK(profile_by_name("halfplane").u(3.0) == 6.0);
    CHECK(profile_by_name("linear").u(3.0) == 3.0);
    CHECK(profile_by_name("loglinear").u(3.0) == doctest::Approx(3.0 * std::log(5.0)));
    CHECK(profile_by_name("quadratic").u(3.0) == 9.0);
    CHECK_THROWS_AS(profile_by_name("cubic"), InputError);
    CHECK(method_names() == std::vector<std::string>{"vc", "vc-rep", "geometric", "union", "greedy", "exact"});
}

TEST_CASE("greedy runs report a fractional baseline") {
    auto inst = abstract_inst();
    RunOutcome out = run_method(inst, "greedy", 5);
    CHECK(out.feasibility.feasible);
    CHECK(out.solution.f > 0.0);
    CHECK(out.result.ratio_f == doctest::Approx(static_cast<double>(out.result.size) / out.solution.f));
    CHECK(out.solution.trace.completion == out.solution.cover.expanded());
    CHECK(out.solution.trace.residual_before == total_demand(inst));
    CHECK_FALSE(out.solution.opt.has_value());
    CHECK(out.result.wall_ms >= 0.0);
}

TEST_CASE("exact runs certify tiny optima") {
    auto inst = abstract_inst();
    RunOutcome out = run_method(inst, "exact", 5);
    CHECK(out.feasibility.feasible);
    REQUIRE(out.solution.opt.has_value());
    CHECK(*out.solution.opt == out.result.size);
    CHECK(out.result.ratio_opt == doctest::Approx(1.0));
    CHECK(out.result.size >= static_cast<long long>(std::ceil(out.solution.f - 1e-9)));
}

TEST_CASE("vc runs are reproducible and gated on repetition") {
    auto inst = abstract_inst();
    RunOutcome a = run_method(inst, "vc", 7);
    RunOutcome b = run_method(inst, "vc", 7);
    CHECK(a.feasibility.feasible);
    CHECK(solution_to_text(a.solution) == solution_to_text(b.solution));
    CHECK_THROWS_AS(run_method(abstract_inst(true), "vc", 7), InputError);
    CHECK_THROWS_AS(run_method(inst, "vc-rep", 7), InputError);

    auto rep = abstract_inst(true);
    RunOutcome r = run_method(rep, "vc-rep", 7);
    CHECK(r.feasibility.feasible);
    CHECK(solution_to_text(r.solution) == solution_to_text(run_method(rep, "vc-rep", 7).solution));
}

TEST_CASE("cell solvers attach their report") {
    auto inst = halfplane_inst();
    RunOutcome g = run_method(inst, "geometric", 3);
    CHECK(g.feasibility.feasible);
    REQUIRE(g.solution.report.has_value());
    CHECK(g.solution.report->total_size == static_cast<std::size_t>(g.result.size));
    CHECK(g.solution.f == g.solution.report->f);
    CHECK(solution_to_text(g.solution) == solution_to_text(run_method(inst, "geometric", 3).solution));

    MethodParams params;
    params.profile = "quadratic";
    RunOutcome u = run_method(inst, "union", 3, params);
    CHECK(u.feasibility.feasible);
    REQUIRE(u.solution.report.has_value());

    CHECK_THROWS_AS(run_method(abstract_inst(), "geometric", 3), InputError);
    CHECK_THROWS_AS(run_method(inst, "fastest", 3), InputError);
}

TEST_CASE("bench grids aggregate per method and skip failures") {
    BenchSpec spec;
    spec.generators = {GeneratorSpec{"abstract-random", 12, 10, 2, 0.5, false, 0}};
    spec.methods = {"greedy", "exact", "vc"};
    spec.seeds = {1, 2, 3};
    BenchOutcome out = run_bench(spec);
    CHECK(out.results.size() == 9);
    CHECK(out.errors.empty());
    REQUIRE(out.aggregates.size() == 3);
    for (const auto& agg : out.aggregates) {
        CHECK(agg.runs == 3);
        CHECK(agg.failures == 0);
        CHECK(agg.median_size > 0.0);
        CHECK(agg.median_ratio_f >= 1.0 - 1e-9);
    }
    // exact never exceeds the others on the same instances
    CHECK(out.aggregates[1].median_size <= out.aggregates[0].median_size);
    CHECK(out.aggregates[1].median_size <= out.aggregates[2].median_size);

    BenchOutcome rerun = run_bench(spec);
    REQUIRE(rerun.results.size() == out.results.size());
    for (std::size_t i = 0; i < out.results.size(); ++i) {
        ResultRecord a = out.results[i], b = rerun.results[i];
        a.wall_ms = b.wall_ms = 0.0;  // the one field allowed to differ
        CHECK(result_to_line(a) == result_to_line(b));
    }

    std::string table = aggregate_table(out.aggregates);
    CHECK(table.find("greedy") != std::string::npos);
    CHECK(table.find("med_ratio") != std::string::npos);
}

TEST_CASE("bench records incompatible pairs as failures") {
    BenchSpec spec;
    spec.generators = {GeneratorSpec{"abstract-random", 8, 8, 1, 0.6, false, 0}};
    spec.methods = {"geometric", "greedy"};
    spec.seeds = {1, 2};
    BenchOutcome out = run_bench(spec);
    CHECK(out.results.size() == 2);  // greedy still completes
    CHECK(out.errors.size() == 2);
    CHECK(out.aggregates[0].failures == 2);
    CHECK(out.aggregates[0].runs == 0);
    CHECK(out.aggregates[1].failures == 0);
}
