#include "multicover/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "multicover/cluster_pipeline.hpp"
#include "multicover/oracle.hpp"
#include "multicover/vc_transform.hpp"

namespace multicover {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw InputError("trailing junk in value of " + key);
        return v;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("cannot parse value \"" + value + "\" of " + key);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw InputError("trailing junk in value of " + key);
        return v;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("cannot parse value \"" + value + "\" of " + key);
    }
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

MethodParams parse_params(const std::string& text) {
    MethodParams p;
    if (text.empty()) return p;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (item.empty() || eq == std::string::npos || eq == 0)
            throw InputError("params must look like key=val,key=val; got \"" + item + "\"");
        std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "delta_star")
            p.delta_star = static_cast<int>(parse_int(key, value));
        else if (key == "alpha")
            p.alpha = parse_double(key, value);
        else if (key == "draw_multiplier")
            p.draw_multiplier = parse_double(key, value);
        else if (key == "max_attempts")
            p.max_attempts = static_cast<int>(parse_int(key, value));
        else if (key == "c_scale")
            p.c_scale = parse_double(key, value);
        else if (key == "beta_scale")
            p.beta_scale = parse_double(key, value);
        else if (key == "node_budget")
            p.node_budget = parse_int(key, value);
        else if (key == "profile")
            p.profile = value;
        else
            throw InputError("unknown parameter \"" + key + "\"");
    }
    return p;
}

const std::vector<std::string>& method_names() {
    static const std::vector<std::string> names{"vc", "vc-rep", "geometric", "union", "greedy", "exact"};
    return names;
}

UnionComplexityProfile profile_by_name(const std::string& name) {
    if (name == "halfplane") return halfplane_profile();
    if (name == "linear") return UnionComplexityProfile{[](double l) { return l; }, 2, "linear"};
    if (name == "loglinear")
        return UnionComplexityProfile{[](double l) { return l * std::log(l + 2.0); }, 2, "loglinear"};
    if (name == "quadratic") return UnionComplexityProfile{[](double l) { return l * l; }, 2, "quadratic"};
    throw InputError("unknown union complexity profile \"" + name + "\"");
}

RunOutcome run_method(const MultiCoverInstance& inst, const std::string& method, std::uint64_t seed,
                      const MethodParams& params) {
    RunOutcome out;
    out.solution.instance = instance_digest(inst);
    out.solution.method = method;
    out.solution.seed = seed;

    out.result.wall_ms = -1.0;  // set inside the branch when f needs an extra LP outside the timer
    auto t0 = std::chrono::steady_clock::now();
    if (method == "vc") {
        VcOptions opts;
        opts.max_attempts = params.max_attempts;
        VcResult res = solve_multicover_vc(inst, params.delta_star, params.alpha, seed, opts);
        out.solution.f = res.lp_value;
        out.solution.cover = std::move(res.cover);
        out.solution.trace = std::move(res.trace);
    } else if (method == "vc-rep") {
        RepetitionOptions opts;
        opts.draw_multiplier = params.draw_multiplier;
        opts.max_attempts = params.max_attempts;
        VcResult res = solve_with_repetition(inst, params.delta_star, seed, opts);
        out.solution.f = res.lp_value;
        out.solution.cover = std::move(res.cover);
        out.solution.trace = std::move(res.trace);
    } else if (method == "geometric" || method == "union") {
        PipelineOptions opts;
        opts.c_scale = params.c_scale;
        opts.beta_scale = params.beta_scale;
        PipelineResult res = method == "geometric"
                                 ? solve_multicover_geometric(inst, seed, opts)
                                 : solve_multicover_union(inst, profile_by_name(params.profile), seed, opts);
        out.solution.f = res.report.f;
        out.solution.cover = std::move(res.cover);
        out.solution.trace = res.report.trace;
        out.solution.report = std::move(res.report);
    } else if (method == "greedy") {
        out.solution.cover = solve_greedy_baseline(inst);
        out.solution.trace.completion = out.solution.cover.expanded();
        out.solution.trace.residual_before = total_demand(inst);
        out.solution.trace.seed = seed;
        out.result.wall_ms = wall_ms_since(t0);
        out.solution.f = solve_lp(inst).value;  // reporting only; greedy never reads it
    } else if (method == "exact") {
        ExactOptions opts;
        opts.node_budget = params.node_budget;
        ExactResult res = solve_exact(inst, opts);
        out.solution.cover = std::move(res.cover);
        if (res.optimal) out.solution.opt = out.solution.cover.size();
        out.solution.trace.seed = seed;
        out.result.wall_ms = wall_ms_since(t0);
        out.solution.f = solve_lp(inst).value;
    } else {
        throw InputError("unknown method \"" + method + "\"; expected one of vc, vc-rep, geometric, union, greedy, exact");
    }
    if (out.result.wall_ms < 0.0) out.result.wall_ms = wall_ms_since(t0);

    out.result.instance = out.solution.instance;
    out.result.method = method;
    out.result.seed = seed;
    out.result.f = out.solution.f;
    out.result.size = out.solution.cover.size();
    out.result.opt = out.solution.opt;
    if (out.solution.f > 0.0) out.result.ratio_f = static_cast<double>(out.result.size) / out.solution.f;
    if (out.solution.opt && *out.solution.opt > 0)
        out.result.ratio_opt = static_cast<double>(out.result.size) / static_cast<double>(*out.solution.opt);

    out.feasibility = is_feasible_cover(inst, out.solution.cover);
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

BenchOutcome run_bench(const BenchSpec& spec) {
    BenchOutcome out;
    struct Tally {
        std::vector<double> size, ratio_f, wall;
        int failures = 0;
    };
    std::vector<Tally> tallies(spec.methods.size());

    for (const auto& gen : spec.generators) {
        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            const std::string& method = spec.methods[mi];
            for (std::uint64_t seed : spec.seeds) {
                GeneratorSpec g = gen;
                g.seed = seed;
                try {
                    MultiCoverInstance inst = generate(g);
                    RunOutcome run = run_method(inst, method, seed, spec.params);
                    if (!run.feasibility.feasible) {
                        ++tallies[mi].failures;
                        out.errors.push_back(method + " seed " + std::to_string(seed) + " on " + g.kind +
                                             ": emitted an infeasible cover");
                        continue;
                    }
                    tallies[mi].size.push_back(static_cast<double>(run.result.size));
                    tallies[mi].ratio_f.push_back(run.result.ratio_f);
                    tallies[mi].wall.push_back(run.result.wall_ms);
                    out.results.push_back(std::move(run.result));
                } catch (const std::exception& e) {
                    ++tallies[mi].failures;
                    out.errors.push_back(method + " seed " + std::to_string(seed) + " on " + g.kind + ": " + e.what());
                }
            }
        }
    }

    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        MethodAggregate agg;
        agg.method = spec.methods[mi];
        agg.runs = static_cast<int>(tallies[mi].size.size());
        agg.failures = tallies[mi].failures;
        auto mean = [](const std::vector<double>& v) {
            return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        };
        agg.median_size = median(tallies[mi].size);
        agg.mean_size = mean(tallies[mi].size);
        agg.median_ratio_f = median(tallies[mi].ratio_f);
        agg.mean_ratio_f = mean(tallies[mi].ratio_f);
        agg.median_wall_ms = median(tallies[mi].wall);
        agg.mean_wall_ms = mean(tallies[mi].wall);
        out.aggregates.push_back(std::move(agg));
    }
    return out;
}

std::string aggregate_table(const std::vector<MethodAggregate>& aggregates) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %5s %5s %12s %10s %12s %10s %12s %10s\n", "method", "runs", "fail",
                  "med_size", "mean_size", "med_ratio", "mean_ratio", "med_ms", "mean_ms");
    out << line;
    for (const auto& a : aggregates) {
        std::snprintf(line, sizeof line, "%-10s %5d %5d %12.2f %10.2f %12.3f %10.3f %12.3f %10.3f\n",
                      a.method.c_str(), a.runs, a.failures, a.median_size, a.mean_size, a.median_ratio_f,
                      a.mean_ratio_f, a.median_wall_ms, a.mean_wall_ms);
        out << line;
    }
    return out.str();
}

}  // namespace multicover
