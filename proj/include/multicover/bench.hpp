#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multicover/generator.hpp"
#include "multicover/io.hpp"
#include "multicover/shallow_cutting.hpp"

namespace multicover {

// Solver knobs reachable from the command line as `--params key=val,...`.
// Every method reads only the knobs it understands.
struct MethodParams {
    int delta_star = 3;            // dual dimension bound (vc, vc-rep)
    double alpha = 3.0;            // pair-system sampling constant (vc)
    double draw_multiplier = 3.0;  // draws per attempt scale (vc-rep)
    int max_attempts = 64;         // retry budget (vc, vc-rep)
    double c_scale = 12.0;         // cell sampling multiplier (geometric, union)
    double beta_scale = 1.0 / 24.0;  // heavy threshold (geometric, union)
    long long node_budget = 200000;  // branch-and-bound nodes (exact)
    std::string profile = "halfplane";  // union complexity curve (union)
};

// Parses "key=val,key=val"; an empty string keeps the defaults. Unknown keys,
// empty segments, or unparseable values are input errors.
MethodParams parse_params(const std::string& text);

// vc, vc-rep, geometric, union, greedy, exact.
const std::vector<std::string>& method_names();

// Union complexity curves selectable by name: halfplane (2l), linear (l),
// loglinear (l ln(l+2)), quadratic (l^2).
UnionComplexityProfile profile_by_name(const std::string& name);

struct RunOutcome {
    SolutionRecord solution;        // reproducible part; report set by the cell solvers
    ResultRecord result;            // adds wall time; trace reference left empty
    FeasibilityReport feasibility;  // independent re-verification of the cover
};

// Dispatches one solve. The fractional value f is taken from the method's own
// LP when it runs one (vc, vc-rep, geometric, union) and computed separately
// for greedy and exact; `opt` is set only when exact certifies optimality.
// Incompatible method/instance pairs raise InputError.
RunOutcome run_method(const MultiCoverInstance& inst, const std::string& method, std::uint64_t seed,
                      const MethodParams& params = {});

// One run per (generator, method, seed): the instance is the generator spec
// regenerated with the run seed, and the same seed drives the solver.
struct BenchSpec {
    std::vector<GeneratorSpec> generators;
    std::vector<std::string> methods;
    std::vector<std::uint64_t> seeds;
    MethodParams params;
};

struct MethodAggregate {
    std::string method;
    int runs = 0;      // completed runs entering the statistics
    int failures = 0;  // thrown or infeasible runs, recorded but not fatal
    double median_size = 0.0, mean_size = 0.0;
    double median_ratio_f = 0.0, mean_ratio_f = 0.0;
    double median_wall_ms = 0.0, mean_wall_ms = 0.0;
};

struct BenchOutcome {
    std::vector<ResultRecord> results;  // grid order: generator, then method, then seed
    std::vector<std::string> errors;    // "<method> seed <s> on <kind>: what went wrong"
    std::vector<MethodAggregate> aggregates;  // per method, in spec order
};

BenchOutcome run_bench(const BenchSpec& spec);

// Midpoint-of-middle-two median; 0 on empty input.
double median(std::vector<double> v);

std::string aggregate_table(const std::vector<MethodAggregate>& aggregates);

}  // namespace multicover
