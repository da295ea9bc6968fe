#include "multicover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace multicover {

namespace {

struct BranchState {
    const MultiCoverInstance* inst;
    std::vector<RangeId> order;              // branch order, largest root LP weight first
    std::vector<int> demand;                 // remaining demand per point index
    std::vector<long long> avail;            // undecided coverage still available per point index
    std::vector<int> chosen;                 // multiplicity per order position
    long long chosen_total = 0;
    long long best = std::numeric_limits<long long>::max();
    std::vector<int> best_choice;
    long long nodes = 0;
    long long budget = 0;
    bool truncated = false;
    LpOptions lp_opts;
};

long long remaining_total(const BranchState& st) {
    long long s = 0;
    for (int d : st.demand) s += d;
    return s;
}

// LP bound on the subproblem of open demands and undecided ranges.
long long lp_bound(BranchState& st, std::size_t next) {
    std::vector<PointRecord> pts;
    const auto& points = st.inst->points();
    for (std::size_t i = 0; i < points.size(); ++i)
        if (st.demand[i] > 0) pts.push_back(PointRecord{points[i].id, st.demand[i], std::nullopt});
    if (pts.empty()) return 0;
    std::vector<RangeRecord> rngs;
    for (std::size_t k = next; k < st.order.size(); ++k) {
        RangeRecord r;
        r.id = st.order[k];
        for (PointId pid : st.inst->range(st.order[k]).members)
            if (st.demand[st.inst->point_index(pid)] > 0) r.members.push_back(pid);
        rngs.push_back(std::move(r));
    }
    MultiCoverInstance sub(std::move(pts), std::move(rngs), st.inst->repetition_allowed());
    double v = solve_lp(sub, st.lp_opts).value;
    return static_cast<long long>(std::ceil(v - 1e-6));
}

void branch(BranchState& st, std::size_t next) {
    if (++st.nodes > st.budget) {
        st.truncated = true;
        return;
    }
    if (st.chosen_total >= st.best) return;

    if (remaining_total(st) == 0) {
        st.best = st.chosen_total;
        st.best_choice = st.chosen;
        return;
    }
    if (next == st.order.size()) return;

    // Feasibility: every open demand must still be coverable by undecided ranges.
    for (std::size_t i = 0; i < st.demand.size(); ++i) {
        if (st.demand[i] <= 0) continue;
        long long cap = st.inst->repetition_allowed() ? (st.avail[i] > 0 ? st.demand[i] : 0) : st.avail[i];
        if (cap < st.demand[i]) return;
    }
    if (st.chosen_total + lp_bound(st, next) >= st.best) return;

    RangeId rid = st.order[next];
    const auto& members = st.inst->range(rid).members;

    // Largest useful multiplicity first so good incumbents appear early.
    int cap = 0;
    if (st.inst->repetition_allowed()) {
        for (PointId pid : members) cap = std::max(cap, st.demand[st.inst->point_index(pid)]);
    } else {
        for (PointId pid : members)
            if (st.demand[st.inst->point_index(pid)] > 0) cap = 1;
    }

    for (PointId pid : members) st.avail[st.inst->point_index(pid)] -= 1;

    for (int mult = cap; mult >= 0 && !st.truncated; --mult) {
        st.chosen[next] = mult;
        st.chosen_total += mult;
        std::vector<std::pair<std::size_t, int>> touched;
        for (PointId pid : members) {
            std::size_t i = st.inst->point_index(pid);
            int dec = std::min(st.demand[i], mult);
            if (dec > 0) {
                touched.emplace_back(i, dec);
                st.demand[i] -= dec;
            }
        }
        branch(st, next + 1);
        for (auto& [i, dec] : touched) st.demand[i] += dec;
        st.chosen_total -= mult;
        st.chosen[next] = 0;
    }

    for (PointId pid : members) st.avail[st.inst->point_index(pid)] += 1;
}

}  // namespace

ExactResult solve_exact(const MultiCoverInstance& inst, const ExactOptions& opts) {
    require_coverable(inst);

    BranchState st;
    st.inst = &inst;
    st.budget = opts.node_budget;
    st.lp_opts = opts.lp;

    FractionalSolution root = solve_lp(inst, opts.lp);
    std::vector<std::pair<double, RangeId>> keyed;
    for (const auto& r : inst.ranges()) keyed.emplace_back(-root.x.weight(r.id), r.id);
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [negw, id] : keyed) st.order.push_back(id);

    st.demand.reserve(inst.points().size());
    for (const auto& p : inst.points()) st.demand.push_back(p.demand);
    st.avail.assign(inst.points().size(), 0);
    for (const auto& p : inst.points())
        st.avail[inst.point_index(p.id)] = static_cast<long long>(inst.covering_ranges(p.id).size());
    st.chosen.assign(st.order.size(), 0);

    // Incumbent from the greedy baseline bounds the search from above.
    CoverSolution greedy = solve_greedy_baseline(inst);
    st.best = greedy.size();
    st.best_choice.assign(st.order.size(), 0);
    for (std::size_t k = 0; k < st.order.size(); ++k) st.best_choice[k] = greedy.multiplicity(st.order[k]);

    branch(st, 0);

    ExactResult res;
    res.nodes = st.nodes;
    res.optimal = !st.truncated;
    for (std::size_t k = 0; k < st.order.size(); ++k)
        if (st.best_choice[k] > 0) res.cover.add(st.order[k], st.best_choice[k]);
    return res;
}

CoverSolution solve_greedy_baseline(const MultiCoverInstance& inst) {
    require_coverable(inst);
    std::vector<int> demand;
    demand.reserve(inst.points().size());
    for (const auto& p : inst.points()) demand.push_back(p.demand);

    CoverSolution cover;
    for (;;) {
        long long open = 0;
        for (int d : demand) open += d;
        if (open == 0) break;

        RangeId pick = -1;
        long long best_gain = 0;
        for (const auto& r : inst.ranges()) {
            if (!inst.repetition_allowed() && cover.contains(r.id)) continue;
            long long gain = 0;
            for (PointId pid : r.members)
                if (demand[inst.point_index(pid)] > 0) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                pick = r.id;
            }
        }
        if (pick < 0) {
            for (const auto& p : inst.points())
                if (demand[inst.point_index(p.id)] > 0)
                    throw InfeasibleError("greedy cannot cover point " + std::to_string(p.id), p.id);
        }
        cover.add(pick);
        for (PointId pid : inst.range(pick).members) {
            std::size_t i = inst.point_index(pid);
            if (demand[i] > 0) --demand[i];
        }
    }
    return cover;
}

RationalLpResult lp_vertex_oracle(const MultiCoverInstance& inst) {
    if (inst.points().size() > 8 || inst.ranges().size() > 8)
        throw InputError("vertex oracle accepts at most 8 points and 8 ranges");
    require_coverable(inst);

    const int m = static_cast<int>(inst.ranges().size());
    std::vector<std::vector<int>> rows;  // covering column sets, demand > 0 only
    std::vector<int> rhs;
    for (const auto& p : inst.points()) {
        if (p.demand <= 0) continue;
        std::vector<int> cols;
        for (RangeId rid : inst.covering_ranges(p.id)) cols.push_back(static_cast<int>(inst.range_index(rid)));
        rows.push_back(std::move(cols));
        rhs.push_back(p.demand);
    }
    const int nr = static_cast<int>(rows.size());
    const bool boxed = !inst.repetition_allowed();

    RationalLpResult best;
    bool found = false;
    std::vector<Rational> x(static_cast<std::size_t>(m));

    auto feasible = [&](const std::vector<Rational>& cand) {
        for (int c = 0; c < m; ++c) {
            if (cand[static_cast<std::size_t>(c)] < Rational(0)) return false;
            if (boxed && cand[static_cast<std::size_t>(c)] > Rational(1)) return false;
        }
        for (int r = 0; r < nr; ++r) {
            Rational got(0);
            for (int c : rows[static_cast<std::size_t>(r)]) got += cand[static_cast<std::size_t>(c)];
            if (got < Rational(rhs[static_cast<std::size_t>(r)])) return false;
        }
        return true;
    };

    auto consider = [&](const std::vector<Rational>& cand) {
        if (!feasible(cand)) return;
        Rational value(0);
        for (const Rational& v : cand) value += v;
        if (!found || value < best.value) {
            found = true;
            best.value = value;
            best.x.clear();
            for (int c = 0; c < m; ++c) best.x.emplace_back(inst.ranges()[static_cast<std::size_t>(c)].id,
                                                            cand[static_cast<std::size_t>(c)]);
        }
    };

    // A vertex has m tight constraints: k covering rows plus m-k pinned
    // variables (at 0, or at 1 when boxed); the free variables solve the k x k
    // system over the chosen rows.
    for (int rmask = 0; rmask < (1 << nr); ++rmask) {
        int k = __builtin_popcount(static_cast<unsigned>(rmask));
        if (k > m) continue;
        std::vector<int> rsel;
        for (int r = 0; r < nr; ++r)
            if (rmask & (1 << r)) rsel.push_back(r);

        for (int fmask = 0; fmask < (1 << m); ++fmask) {
            if (__builtin_popcount(static_cast<unsigned>(fmask)) != k) continue;
            std::vector<int> fsel;
            for (int c = 0; c < m; ++c)
                if (fmask & (1 << c)) fsel.push_back(c);
            int pinned = (~fmask) & ((1 << m) - 1);

            // Every subset of pinned variables set to 1 (only the empty one unboxed).
            int ones = pinned;
            for (;;) {
                for (int c = 0; c < m; ++c) x[static_cast<std::size_t>(c)] = Rational(0);
                if (boxed)
                    for (int c = 0; c < m; ++c)
                        if (ones & (1 << c)) x[static_cast<std::size_t>(c)] = Rational(1);

                // Solve rows(rsel) restricted to free columns.
                bool ok = true;
                if (k > 0) {
                    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(k),
                                                         std::vector<Rational>(static_cast<std::size_t>(k + 1)));
                    for (int i = 0; i < k; ++i) {
                        Rational b(rhs[static_cast<std::size_t>(rsel[static_cast<std::size_t>(i)])]);
                        for (int c : rows[static_cast<std::size_t>(rsel[static_cast<std::size_t>(i)])]) {
                            auto pos = std::find(fsel.begin(), fsel.end(), c);
                            if (pos != fsel.end())
                                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos - fsel.begin())] = Rational(1);
                            else
                                b -= x[static_cast<std::size_t>(c)];
                        }
                        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = b;
                    }
                    for (int col = 0; col < k && ok; ++col) {
                        int piv = -1;
                        for (int row = col; row < k; ++row)
                            if (a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != Rational(0)) {
                                piv = row;
                                break;
                            }
                        if (piv < 0) {
                            ok = false;  // singular: no vertex from this tight set
                            break;
                        }
                        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
                        Rational diag = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
                        for (int j = col; j <= k; ++j) a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= diag;
                        for (int row = 0; row < k; ++row) {
                            if (row == col) continue;
                            Rational f = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
                            if (f == Rational(0)) continue;
                            for (int j = col; j <= k; ++j)
                                a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
                                    f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
                        }
                    }
                    if (ok)
                        for (int i = 0; i < k; ++i)
                            x[static_cast<std::size_t>(fsel[static_cast<std::size_t>(i)])] =
                                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                }
                if (ok) consider(x);

                if (!boxed || ones == 0) break;
                ones = (ones - 1) & pinned;  // next subset, ending after the empty set
            }
        }
    }

    if (!found) throw InternalError("no basic feasible point found after coverability pre-check");
    return best;
}

}  // namespace multicover
