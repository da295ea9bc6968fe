#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace multicover {

using PointId = int;
using RangeId = int;

// Malformed or inconsistent input (files, flags, instance structure). CLI exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// The instance admits no feasible cover; carries a witness point. CLI exit code 1.
struct InfeasibleError : std::runtime_error {
    PointId witness;
    InfeasibleError(const std::string& what, PointId w) : std::runtime_error(what), witness(w) {}
};

// A retry or node budget was exhausted before success. CLI exit code 3.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A machine-checked invariant failed; indicates a bug, not bad input. CLI exit code 3.
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace multicover
