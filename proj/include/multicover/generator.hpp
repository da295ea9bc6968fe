#pragma once

#include <cstdint>
#include <string>

#include "multicover/instance.hpp"

namespace multicover {

// Seeded instance generator. Kinds:
//   abstract-random           explicit member lists, each incidence drawn
//                             independently with probability `density`
//   halfplane-random          points in [-1,1]^2, halfplane boundaries
//                             through random anchors in the same square
//   disk-random-materialized  random disks over [-1,1]^2, stored as explicit
//                             member lists (bounded dual shatter dimension,
//                             so the prefix-splitting solver applies)
// Demands are uniform on [1, d_max]. Every generated instance is feasible
// with slack: each point is covered by at least d_max ranges (one, when
// copies are allowed), regenerating from the next derived stream otherwise.
struct GeneratorSpec {
    std::string kind = "abstract-random";
    int n = 0;
    int m = 0;
    int d_max = 1;
    double density = 0.5;  // abstract incidence probability; ignored elsewhere
    bool repetition = false;
    std::uint64_t seed = 0;
};

// Throws InputError for bad parameters and BudgetError when 100 regeneration
// attempts cannot reach the coverage floor.
MultiCoverInstance generate(const GeneratorSpec& spec);

}  // namespace multicover
