#pragma once

#include <map>
#include <optional>
#include <vector>

#include "multicover/geometry.hpp"
#include "multicover/types.hpp"

namespace multicover {

struct PointRecord {
    PointId id = 0;
    int demand = 0;
    std::optional<Vec2> pos;  // required when any range is a halfplane
};

// A range is either an explicit member list or a halfplane. Halfplane
// membership is evaluated once at construction and cached in `members`, so
// explicit lists are the canonical internal representation everywhere else.
struct RangeRecord {
    RangeId id = 0;
    std::optional<Halfplane> halfplane;
    std::vector<PointId> members;  // sorted, deduped after construction

    bool geometric() const { return halfplane.has_value(); }
};

// Nonnegative weights on range ids; iteration runs in increasing id order.
class WeightedRangeSet {
  public:
    WeightedRangeSet() = default;

    double weight(RangeId id) const {
        auto it = w_.find(id);
        return it == w_.end() ? 0.0 : it->second;
    }
    void set(RangeId id, double w);
    double total() const;
    bool contains(RangeId id) const { return w_.count(id) > 0; }
    std::size_t size() const { return w_.size(); }
    bool empty() const { return w_.empty(); }

    auto begin() const { return w_.begin(); }
    auto end() const { return w_.end(); }

  private:
    std::map<RangeId, double> w_;
};

// Multiset of chosen range ids. Without repetition every multiplicity is 1.
class CoverSolution {
  public:
    CoverSolution() = default;

    void add(RangeId id, int copies = 1);
    int multiplicity(RangeId id) const {
        auto it = counts_.find(id);
        return it == counts_.end() ? 0 : it->second;
    }
    bool contains(RangeId id) const { return counts_.count(id) > 0; }
    long long size() const;                    // total copies
    std::size_t distinct() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }
    std::vector<RangeId> expanded() const;     // ids repeated by multiplicity, ascending

    auto begin() const { return counts_.begin(); }
    auto end() const { return counts_.end(); }

    friend bool operator==(const CoverSolution& a, const CoverSolution& b) { return a.counts_ == b.counts_; }

  private:
    std::map<RangeId, int> counts_;
};

// Points with integer demands plus ranges; a cover must hit every point p with
// at least demand(p) ranges, distinct ones unless repetition is allowed.
// Immutable after construction; incidence in both directions is precomputed.
class MultiCoverInstance {
  public:
    MultiCoverInstance(std::vector<PointRecord> points, std::vector<RangeRecord> ranges, bool repetition_allowed);

    const std::vector<PointRecord>& points() const { return points_; }
    const std::vector<RangeRecord>& ranges() const { return ranges_; }
    bool repetition_allowed() const { return repetition_allowed_; }

    bool has_point(PointId id) const;
    bool has_range(RangeId id) const;
    const PointRecord& point(PointId id) const;
    const RangeRecord& range(RangeId id) const;
    std::size_t point_index(PointId id) const;
    std::size_t range_index(RangeId id) const;

    // Ids of ranges containing p, ascending.
    const std::vector<RangeId>& covering_ranges(PointId id) const;

    bool all_geometric() const { return all_geometric_; }

    friend bool operator==(const MultiCoverInstance& a, const MultiCoverInstance& b);

  private:
    std::vector<PointRecord> points_;           // ascending id
    std::vector<RangeRecord> ranges_;           // ascending id
    std::vector<std::vector<RangeId>> cover_;   // per point index
    bool repetition_allowed_ = false;
    bool all_geometric_ = false;
};

// Weighted number of ranges in X containing p.
double depth(const MultiCoverInstance& inst, PointId p, const WeightedRangeSet& x);
// Copies in C containing p.
long long depth(const MultiCoverInstance& inst, PointId p, const CoverSolution& c);

long long total_demand(const MultiCoverInstance& inst);

// Instance left after committing to Z: demands drop by coverage from Z, points
// with no remaining demand are dropped, and the ranges used by Z are removed.
MultiCoverInstance residual(const MultiCoverInstance& inst, const CoverSolution& z);

struct Deficit {
    PointId point = 0;
    long long required = 0;  // demand
    long long got = 0;       // coverage provided
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Deficit> deficits;                  // points with missing coverage
    std::vector<RangeId> repeated_without_permit;   // multiplicity > 1 in a no-repetition instance
    std::vector<RangeId> unknown_ranges;            // ids not present in the instance
};

FeasibilityReport is_feasible_cover(const MultiCoverInstance& inst, const CoverSolution& c);

// Roles swapped: one ground-set element per range of `inst`, one range per
// point p containing exactly the ids of ranges that cover p. Demands default
// to 1; a point of `inst` in no range yields an empty dual range.
MultiCoverInstance dual_system(const MultiCoverInstance& inst);

// Throws InfeasibleError naming a witness point if demands cannot possibly be
// met: a point needs demand(p) distinct covering ranges (one, with repetition).
void require_coverable(const MultiCoverInstance& inst);

}  // namespace multicover
