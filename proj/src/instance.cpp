#include "multicover/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace multicover {

namespace {

template <typename Rec>
const Rec* find_by_id(const std::vector<Rec>& v, int id) {
    auto it = std::lower_bound(v.begin(), v.end(), id, [](const Rec& r, int key) { return r.id < key; });
    if (it == v.end() || it->id != id) return nullptr;
    return &*it;
}

}  // namespace

void WeightedRangeSet::set(RangeId id, double w) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("weight for range " + std::to_string(id) + " must be finite and nonnegative");
    if (w == 0.0)
        w_.erase(id);
    else
        w_[id] = w;
}

double WeightedRangeSet::total() const {
    double s = 0.0;
    for (const auto& [id, w] : w_) s += w;
    return s;
}

void CoverSolution::add(RangeId id, int copies) {
    if (copies < 0) throw InputError("negative multiplicity for range " + std::to_string(id));
    if (copies == 0) return;
    counts_[id] += copies;
}

long long CoverSolution::size() const {
    long long s = 0;
    for (const auto& [id, k] : counts_) s += k;
    return s;
}

std::vector<RangeId> CoverSolution::expanded() const {
    std::vector<RangeId> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (const auto& [id, k] : counts_)
        for (int i = 0; i < k; ++i) out.push_back(id);
    return out;
}

MultiCoverInstance::MultiCoverInstance(std::vector<PointRecord> points, std::vector<RangeRecord> ranges,
                                       bool repetition_allowed)
    : points_(std::move(points)), ranges_(std::move(ranges)), repetition_allowed_(repetition_allowed) {
    std::sort(points_.begin(), points_.end(), [](const PointRecord& a, const PointRecord& b) { return a.id < b.id; });
    std::sort(ranges_.begin(), ranges_.end(), [](const RangeRecord& a, const RangeRecord& b) { return a.id < b.id; });

    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        if (points_[i].id == points_[i + 1].id) throw InputError("duplicate point id " + std::to_string(points_[i].id));
    for (std::size_t i = 0; i + 1 < ranges_.size(); ++i)
        if (ranges_[i].id == ranges_[i + 1].id) throw InputError("duplicate range id " + std::to_string(ranges_[i].id));

    for (const auto& p : points_) {
        if (p.id < 0) throw InputError("point id must be nonnegative");
        if (p.demand < 0) throw InputError("point " + std::to_string(p.id) + " has negative demand");
        if (p.pos && (!std::isfinite(p.pos->x) || !std::isfinite(p.pos->y)))
            throw InputError("point " + std::to_string(p.id) + " has non-finite coordinates");
    }

    bool any_geometric = false;
    all_geometric_ = !ranges_.empty();
    for (auto& r : ranges_) {
        if (r.id < 0) throw InputError("range id must be nonnegative");
        if (r.geometric()) {
            any_geometric = true;
            if (!r.members.empty())
                throw InputError("range " + std::to_string(r.id) + " has both a halfplane and explicit members");
        } else {
            all_geometric_ = false;
        }
    }
    if (any_geometric)
        for (const auto& p : points_)
            if (!p.pos) throw InputError("point " + std::to_string(p.id) + " lacks coordinates required by halfplane ranges");

    // Canonicalize: halfplane membership is evaluated once here and cached.
    for (auto& r : ranges_) {
        if (r.geometric()) {
            for (const auto& p : points_)
                if (r.halfplane->contains(*p.pos)) r.members.push_back(p.id);
        } else {
            std::sort(r.members.begin(), r.members.end());
            r.members.erase(std::unique(r.members.begin(), r.members.end()), r.members.end());
            for (PointId pid : r.members)
                if (!find_by_id(points_, pid))
                    throw InputError("range " + std::to_string(r.id) + " refers to unknown point " + std::to_string(pid));
        }
    }

    cover_.assign(points_.size(), {});
    for (const auto& r : ranges_)
        for (PointId pid : r.members) cover_[point_index(pid)].push_back(r.id);
}

bool MultiCoverInstance::has_point(PointId id) const { return find_by_id(points_, id) != nullptr; }
bool MultiCoverInstance::has_range(RangeId id) const { return find_by_id(ranges_, id) != nullptr; }

const PointRecord& MultiCoverInstance::point(PointId id) const {
    const PointRecord* p = find_by_id(points_, id);
    if (!p) throw InputError("unknown point id " + std::to_string(id));
    return *p;
}

const RangeRecord& MultiCoverInstance::range(RangeId id) const {
    const RangeRecord* r = find_by_id(ranges_, id);
    if (!r) throw InputError("unknown range id " + std::to_string(id));
    return *r;
}

std::size_t MultiCoverInstance::point_index(PointId id) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), id,
                               [](const PointRecord& r, int key) { return r.id < key; });
    if (it == points_.end() || it->id != id) throw InputError("unknown point id " + std::to_string(id));
    return static_cast<std::size_t>(it - points_.begin());
}

std::size_t MultiCoverInstance::range_index(RangeId id) const {
    auto it = std::lower_bound(ranges_.begin(), ranges_.end(), id,
                               [](const RangeRecord& r, int key) { return r.id < key; });
    if (it == ranges_.end() || it->id != id) throw InputError("unknown range id " + std::to_string(id));
    return static_cast<std::size_t>(it - ranges_.begin());
}

const std::vector<RangeId>& MultiCoverInstance::covering_ranges(PointId id) const { return cover_[point_index(id)]; }

bool operator==(const MultiCoverInstance& a, const MultiCoverInstance& b) {
    if (a.repetition_allowed_ != b.repetition_allowed_) return false;
    if (a.points_.size() != b.points_.size() || a.ranges_.size() != b.ranges_.size()) return false;
    for (std::size_t i = 0; i < a.points_.size(); ++i) {
        const auto& p = a.points_[i];
        const auto& q = b.points_[i];
        if (p.id != q.id || p.demand != q.demand || p.pos.has_value() != q.pos.has_value()) return false;
        if (p.pos && (p.pos->x != q.pos->x || p.pos->y != q.pos->y)) return false;
    }
    for (std::size_t i = 0; i < a.ranges_.size(); ++i) {
        const auto& r = a.ranges_[i];
        const auto& s = b.ranges_[i];
        if (r.id != s.id || r.members != s.members || r.geometric() != s.geometric()) return false;
        if (r.halfplane &&
            (r.halfplane->a != s.halfplane->a || r.halfplane->b != s.halfplane->b || r.halfplane->c != s.halfplane->c))
            return false;
    }
    return true;
}

double depth(const MultiCoverInstance& inst, PointId p, const WeightedRangeSet& x) {
    double s = 0.0;
    for (RangeId r : inst.covering_ranges(p)) s += x.weight(r);
    return s;
}

long long depth(const MultiCoverInstance& inst, PointId p, const CoverSolution& c) {
    long long s = 0;
    for (RangeId r : inst.covering_ranges(p)) s += c.multiplicity(r);
    return s;
}

long long total_demand(const MultiCoverInstance& inst) {
    long long s = 0;
    for (const auto& p : inst.points()) s += p.demand;
    return s;
}

MultiCoverInstance residual(const MultiCoverInstance& inst, const CoverSolution& z) {
    std::vector<PointRecord> pts;
    for (const auto& p : inst.points()) {
        long long left = p.demand - depth(inst, p.id, z);
        if (left > 0) pts.push_back(PointRecord{p.id, static_cast<int>(left), p.pos});
    }
    std::set<PointId> kept;
    for (const auto& p : pts) kept.insert(p.id);

    std::vector<RangeRecord> rngs;
    for (const auto& r : inst.ranges()) {
        if (z.contains(r.id)) continue;
        RangeRecord nr;
        nr.id = r.id;
        nr.halfplane = r.halfplane;
        if (!nr.halfplane) {
            for (PointId pid : r.members)
                if (kept.count(pid)) nr.members.push_back(pid);
        }
        rngs.push_back(std::move(nr));
    }
    return MultiCoverInstance(std::move(pts), std::move(rngs), inst.repetition_allowed());
}

FeasibilityReport is_feasible_cover(const MultiCoverInstance& inst, const CoverSolution& c) {
    FeasibilityReport rep;
    for (const auto& [id, k] : c) {
        if (!inst.has_range(id)) {
            rep.unknown_ranges.push_back(id);
            rep.feasible = false;
        }
        if (!inst.repetition_allowed() && k > 1) {
            rep.repeated_without_permit.push_back(id);
            rep.feasible = false;
        }
    }
    for (const auto& p : inst.points()) {
        long long got = depth(inst, p.id, c);
        if (got < p.demand) {
            rep.deficits.push_back(Deficit{p.id, p.demand, got});
            rep.feasible = false;
        }
    }
    return rep;
}

MultiCoverInstance dual_system(const MultiCoverInstance& inst) {
    std::vector<PointRecord> pts;
    pts.reserve(inst.ranges().size());
    for (const auto& r : inst.ranges()) pts.push_back(PointRecord{r.id, 1, std::nullopt});

    std::vector<RangeRecord> rngs;
    rngs.reserve(inst.points().size());
    for (const auto& p : inst.points()) {
        RangeRecord nr;
        nr.id = p.id;
        nr.members = inst.covering_ranges(p.id);
        rngs.push_back(std::move(nr));
    }
    return MultiCoverInstance(std::move(pts), std::move(rngs), inst.repetition_allowed());
}

void require_coverable(const MultiCoverInstance& inst) {
    for (const auto& p : inst.points()) {
        if (p.demand == 0) continue;
        std::size_t have = inst.covering_ranges(p.id).size();
        bool ok = inst.repetition_allowed() ? have >= 1 : have >= static_cast<std::size_t>(p.demand);
        if (!ok)
            throw InfeasibleError("point " + std::to_string(p.id) + " demands " + std::to_string(p.demand) +
                                      " but only " + std::to_string(have) + " ranges cover it",
                                  p.id);
    }
}

}  // namespace multicover
