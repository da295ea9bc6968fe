#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "multicover/bench.hpp"
#include "multicover/cluster_pipeline.hpp"
#include "multicover/generator.hpp"
#include "multicover/io.hpp"
#include "multicover/shallow_cutting.hpp"

using namespace multicover;

namespace {

// 0 feasible/success, 1 infeasible or deficit, 2 input error, 3 internal or budget failure.
constexpr int kFeasible = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

struct GenArgs {
    GeneratorSpec spec;
    std::string out;
};

int run_gen(const GenArgs& args) {
    MultiCoverInstance inst = generate(args.spec);
    save_instance(inst, args.out);
    std::cout << "wrote " << args.out << " digest " << instance_digest(inst) << " points " << inst.points().size()
              << " ranges " << inst.ranges().size() << "\n";
    return kFeasible;
}

struct SolveArgs {
    std::string in;
    std::string method;
    std::uint64_t seed = 0;
    std::string params;
    std::string out;      // solution file
    std::string results;  // result line, appended
};

int run_solve(const SolveArgs& args) {
    MultiCoverInstance inst = load_instance(args.in);
    RunOutcome run = run_method(inst, args.method, args.seed, parse_params(args.params));
    if (!run.feasibility.feasible) {
        for (const auto& d : run.feasibility.deficits)
            std::cerr << "deficit: point " << d.point << " needs " << d.required << " got " << d.got << "\n";
        std::cerr << args.method << " emitted an infeasible cover; nothing written\n";
        return kInfeasible;
    }
    run.result.trace = args.out;
    if (!args.out.empty()) save_solution(run.solution, args.out);
    if (!args.results.empty()) {
        std::ofstream res(args.results, std::ios::app);
        if (!res) throw InputError("cannot write " + args.results);
        res << result_to_line(run.result) << "\n";
    }
    std::cout << args.method << " f " << run.solution.f << " size " << run.result.size;
    if (run.solution.opt) std::cout << " opt " << *run.solution.opt;
    if (run.result.ratio_f > 0.0) std::cout << " ratio " << run.result.ratio_f;
    std::cout << " wall_ms " << run.result.wall_ms << "\n";
    return kFeasible;
}

struct VerifyArgs {
    std::string in;
    std::string solution;
};

int run_verify(const VerifyArgs& args) {
    MultiCoverInstance inst = load_instance(args.in);
    SolutionRecord sol = load_solution(args.solution);
    if (sol.instance != instance_digest(inst))
        throw InputError("solution digest " + sol.instance + " does not match instance " + instance_digest(inst));
    FeasibilityReport report = is_feasible_cover(inst, sol.cover);
    if (report.feasible) {
        std::cout << "feasible: " << sol.cover.size() << " ranges meet every demand\n";
        return kFeasible;
    }
    for (const auto& d : report.deficits)
        std::cout << "deficit: point " << d.point << " needs " << d.required << " got " << d.got << "\n";
    for (RangeId id : report.repeated_without_permit) std::cout << "repeated without permit: range " << id << "\n";
    for (RangeId id : report.unknown_ranges) std::cout << "unknown range: " << id << "\n";
    return kInfeasible;
}

struct BenchArgs {
    std::vector<std::string> kinds{"abstract-random"};
    std::vector<std::string> methods;
    int n = 30;
    int m = 20;
    int d_max = 2;
    double density = 0.5;
    bool repetition = false;
    int runs = 10;
    std::uint64_t seed = 0;
    std::string params;
    std::string out;  // results file, one line per run
};

int run_bench_cmd(const BenchArgs& args) {
    BenchSpec spec;
    for (const auto& kind : args.kinds)
        spec.generators.push_back(GeneratorSpec{kind, args.n, args.m, args.d_max, args.density, args.repetition, 0});
    spec.methods = args.methods.empty() ? method_names() : args.methods;
    for (int i = 0; i < args.runs; ++i) spec.seeds.push_back(args.seed + static_cast<std::uint64_t>(i));
    spec.params = parse_params(args.params);

    BenchOutcome out = run_bench(spec);
    if (!args.out.empty()) {
        std::ofstream res(args.out, std::ios::trunc);
        if (!res) throw InputError("cannot write " + args.out);
        for (const auto& rec : out.results) res << result_to_line(rec) << "\n";
    }
    for (const auto& err : out.errors) std::cerr << "failed: " << err << "\n";
    std::cout << aggregate_table(out.aggregates);
    return kFeasible;
}

struct CuttingArgs {
    std::string in;
    double r = 4.0;
    std::uint64_t seed = 0;
    std::string svg;
};

int run_cutting(const CuttingArgs& args) {
    MultiCoverInstance inst = load_instance(args.in);
    if (!inst.all_geometric()) throw InputError("cutting inspection needs a halfplane instance");
    if (!(args.r >= 1.0)) throw InputError("r must be at least 1");
    std::vector<Halfplane> hs;
    std::vector<Line> lines;
    for (const auto& range : inst.ranges()) {
        hs.push_back(*range.halfplane);
        lines.push_back(range.halfplane->boundary());
    }
    std::vector<double> weights(hs.size(), 1.0);
    std::vector<Vec2> pos;
    for (const auto& p : inst.points())
        if (p.pos) pos.push_back(*p.pos);

    CuttingOptions opts;
    opts.region = bounding_box(pos, lines);
    Cutting cut = build_cutting(hs, weights, args.r, args.seed, opts);
    CuttingVerification check = verify_cutting(cut, hs, weights, args.r);

    std::cout << "cells " << cut.cells.size() << " first_stage " << cut.first_stage_cells << " patches "
              << cut.patches.size() << " max_crossing " << check.max_crossing_weight << " budget "
              << cut.total_weight / cut.r << "\n";
    if (!args.svg.empty()) {
        std::vector<Trapezoid> traps;
        for (const auto& cell : cut.cells) traps.push_back(cell.trap);
        std::ofstream svg(args.svg, std::ios::trunc);
        if (!svg) throw InputError("cannot write " + args.svg);
        svg << svg_decomposition(traps, lines, pos, cut.box);
        std::cout << "wrote " << args.svg << "\n";
    }
    if (!check.ok) throw InternalError("cutting verification failed: " + check.failure);
    return kFeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-cover toolkit: generate, solve, verify, benchmark, inspect cuttings"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a seeded instance file");
    gen_cmd->add_option("--kind", gen_args.spec.kind,
                        "abstract-random | halfplane-random | disk-random-materialized");
    gen_cmd->add_option("--n", gen_args.spec.n, "points");
    gen_cmd->add_option("--m", gen_args.spec.m, "ranges");
    gen_cmd->add_option("--dmax", gen_args.spec.d_max, "demands are uniform on [1, dmax]");
    gen_cmd->add_option("--density", gen_args.spec.density, "abstract incidence probability");
    gen_cmd->add_flag("--rep", gen_args.spec.repetition, "allow covering a demand with copies of one range");
    gen_cmd->add_option("--seed", gen_args.spec.seed, "generator seed");
    gen_cmd->add_option("--out", gen_args.out, "instance file to write")->required();

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance and write the cover");
    solve_cmd->add_option("--in", solve_args.in, "instance file")->required();
    solve_cmd->add_option("--method", solve_args.method, "vc | vc-rep | geometric | union | greedy | exact")
        ->required();
    solve_cmd->add_option("--seed", solve_args.seed, "solver seed");
    solve_cmd->add_option("--params", solve_args.params, "key=val,... solver knobs");
    solve_cmd->add_option("--out", solve_args.out, "solution file to write");
    solve_cmd->add_option("--results", solve_args.results, "result-line file to append to");

    VerifyArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a solution file against its instance");
    verify_cmd->add_option("--in", verify_args.in, "instance file")->required();
    verify_cmd->add_option("--solution", verify_args.solution, "solution file")->required();

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run a (generator, method, seed) grid");
    bench_cmd->add_option("--kinds", bench_args.kinds, "generator kinds")->delimiter(',');
    bench_cmd->add_option("--methods", bench_args.methods, "methods to compare; default all")->delimiter(',');
    bench_cmd->add_option("--n", bench_args.n, "points per instance");
    bench_cmd->add_option("--m", bench_args.m, "ranges per instance");
    bench_cmd->add_option("--dmax", bench_args.d_max, "demand cap");
    bench_cmd->add_option("--density", bench_args.density, "abstract incidence probability");
    bench_cmd->add_flag("--rep", bench_args.repetition, "repetition-allowed instances");
    bench_cmd->add_option("--runs", bench_args.runs, "seeds per cell");
    bench_cmd->add_option("--seed", bench_args.seed, "first seed");
    bench_cmd->add_option("--params", bench_args.params, "key=val,... solver knobs");
    bench_cmd->add_option("--out", bench_args.out, "result-line file to write");

    CuttingArgs cutting_args;
    CLI::App* cutting_cmd = app.add_subcommand("cutting", "build and verify a cutting over a halfplane instance");
    cutting_cmd->add_option("--in", cutting_args.in, "halfplane instance file")->required();
    cutting_cmd->add_option("--r", cutting_args.r, "crossing parameter; budget is total weight / r");
    cutting_cmd->add_option("--seed", cutting_args.seed, "net seed");
    cutting_cmd->add_option("--svg", cutting_args.svg, "decomposition picture to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen_args);
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (verify_cmd->parsed()) return run_verify(verify_args);
        if (bench_cmd->parsed()) return run_bench_cmd(bench_args);
        if (cutting_cmd->parsed()) return run_cutting(cutting_args);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInputError;
}
