#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "multicover/cluster_pipeline.hpp"
#include "multicover/instance.hpp"
#include "multicover/rounding.hpp"

namespace multicover {

// Canonical instance text: a JSON object with top-level fields `points`
// (id, demand, optional x and y), `ranges` (id plus either `members` or
// `halfplane: {a, b, c}` meaning a*x + b*y <= c), and `repetition_allowed`.
// Field names are normative and unknown fields are rejected. Serialization
// is canonical — field order, indentation, and number formatting are fixed —
// so equal instances produce byte-identical files.
std::string instance_to_text(const MultiCoverInstance& inst);
MultiCoverInstance instance_from_text(const std::string& text);
MultiCoverInstance load_instance(const std::string& path);
void save_instance(const MultiCoverInstance& inst, const std::string& path);

// FNV-1a 64-bit over the canonical instance text, as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string instance_digest(const MultiCoverInstance& inst);

// Everything a solve produces except wall time, so reruns with the same seed
// write byte-identical files. The pipeline report is present for the
// cell-sampling methods and serialized without its timing fields.
struct SolutionRecord {
    std::string instance;  // digest of the instance solved
    std::string method;
    std::uint64_t seed = 0;
    double f = 0.0;                   // fractional optimum
    std::optional<long long> opt;     // exact optimum when certified
    CoverSolution cover;
    RoundingTrace trace;
    std::optional<PipelineReport> report;
};

std::string solution_to_text(const SolutionRecord& sol);
SolutionRecord solution_from_text(const std::string& text);
SolutionRecord load_solution(const std::string& path);
void save_solution(const SolutionRecord& sol, const std::string& path);

// One benchmark outcome as a single JSON line. ratio_f = size/f when f > 0.
// wall_ms is the only field expected to differ between identical reruns.
struct ResultRecord {
    std::string instance;  // digest
    std::string method;
    std::uint64_t seed = 0;
    double f = 0.0;
    long long size = 0;
    std::optional<long long> opt;
    double ratio_f = 0.0;
    std::optional<double> ratio_opt;
    double wall_ms = 0.0;
    std::string trace;  // where the full trace lives: a solution path, or ""
};

std::string result_to_line(const ResultRecord& rec);
ResultRecord result_from_line(const std::string& line);

}  // namespace multicover
