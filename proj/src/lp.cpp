#include "multicover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "multicover/notes.hpp"

namespace multicover {

namespace {

constexpr double kPivotTol = 1e-9;

struct SimplexResult {
    std::vector<double> x;  // per column of the primal problem
    std::vector<double> y;  // per row: dual multiplier of the covering constraint
    double value = 0.0;
};

// Tableau simplex on the dual of the covering problem:
//   max d^T y - 1^T z   s.t.  A^T y - z <= 1,  y, z >= 0   (z absent when unbounded vars)
// The dual is feasible at the origin, so no phase one is needed, and the
// primal optimum appears in the reduced costs of the slack columns.
// `active` selects the primal columns participating in this solve.
SimplexResult simplex_on_dual(const LpProblem& lp, const std::vector<int>& active, const LpOptions& opts) {
    const int nr = static_cast<int>(lp.rows.size());
    const int na = static_cast<int>(active.size());
    const bool boxed = lp.bounded;

    // Column layout: [0,nr) dual y, then na z columns when boxed, then na slacks.
    const int zoff = nr;
    const int soff = nr + (boxed ? na : 0);
    const int ncols = soff + na;

    // Rows of the dual tableau: one per active primal column.
    std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(na));
    {
        std::vector<int> col_pos(lp.cols.size(), -1);
        for (int k = 0; k < na; ++k) col_pos[static_cast<std::size_t>(active[k])] = k;
        for (int r = 0; r < nr; ++r)
            for (int c : lp.row_cols[static_cast<std::size_t>(r)]) {
                int k = col_pos[static_cast<std::size_t>(c)];
                if (k >= 0) col_rows[static_cast<std::size_t>(k)].push_back(r);
            }
    }

    std::vector<std::vector<double>> tab(static_cast<std::size_t>(na), std::vector<double>(ncols, 0.0));
    std::vector<double> rhs(static_cast<std::size_t>(na), 1.0);
    std::vector<double> cred(static_cast<std::size_t>(ncols), 0.0);
    std::vector<int> basis(static_cast<std::size_t>(na));

    for (int k = 0; k < na; ++k) {
        for (int r : col_rows[static_cast<std::size_t>(k)]) tab[k][static_cast<std::size_t>(r)] = 1.0;
        if (boxed) tab[k][static_cast<std::size_t>(zoff + k)] = -1.0;
        tab[k][static_cast<std::size_t>(soff + k)] = 1.0;
        basis[static_cast<std::size_t>(k)] = soff + k;
    }
    for (int r = 0; r < nr; ++r) cred[static_cast<std::size_t>(r)] = lp.rhs[static_cast<std::size_t>(r)];
    if (boxed)
        for (int k = 0; k < na; ++k) cred[static_cast<std::size_t>(zoff + k)] = -1.0;

    double obj = 0.0;
    bool bland = false;
    int stall = 0;
    const int stall_limit = 2 * (na + ncols) + 16;

    for (int iter = 0;; ++iter) {
        if (iter > opts.max_pivots)
            throw InternalError("simplex exceeded the pivot budget (" + std::to_string(opts.max_pivots) + ")");

        int q = -1;
        if (bland) {
            for (int j = 0; j < ncols; ++j)
                if (cred[static_cast<std::size_t>(j)] > kPivotTol) {
                    q = j;
                    break;
                }
        } else {
            double best = kPivotTol;
            for (int j = 0; j < ncols; ++j)
                if (cred[static_cast<std::size_t>(j)] > best) {
                    best = cred[static_cast<std::size_t>(j)];
                    q = j;
                }
        }
        if (q < 0) break;  // optimal

        int leave = -1;
        double best_t = std::numeric_limits<double>::infinity();
        for (int r = 0; r < na; ++r) {
            double a = tab[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
            if (a <= kPivotTol) continue;
            double t = rhs[static_cast<std::size_t>(r)] / a;
            if (t < best_t - 1e-12 ||
                (t <= best_t + 1e-12 && (leave < 0 || basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)]))) {
                best_t = t;
                leave = r;
            }
        }
        if (leave < 0) throw InternalError("dual unbounded after coverability pre-check");

        auto& prow = tab[static_cast<std::size_t>(leave)];
        double piv = prow[static_cast<std::size_t>(q)];
        for (double& v : prow) v /= piv;
        rhs[static_cast<std::size_t>(leave)] /= piv;
        for (int r = 0; r < na; ++r) {
            if (r == leave) continue;
            double f = tab[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
            if (f == 0.0) continue;
            auto& row = tab[static_cast<std::size_t>(r)];
            for (int j = 0; j < ncols; ++j) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(q)] = 0.0;
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(leave)];
            if (rhs[static_cast<std::size_t>(r)] < 0.0 && rhs[static_cast<std::size_t>(r)] > -1e-12)
                rhs[static_cast<std::size_t>(r)] = 0.0;
        }
        double fc = cred[static_cast<std::size_t>(q)];
        for (int j = 0; j < ncols; ++j) cred[static_cast<std::size_t>(j)] -= fc * prow[static_cast<std::size_t>(j)];
        cred[static_cast<std::size_t>(q)] = 0.0;
        double gain = fc * rhs[static_cast<std::size_t>(leave)];
        obj += gain;
        basis[static_cast<std::size_t>(leave)] = q;

        if (gain <= 1e-13 * std::max(1.0, std::abs(obj))) {
            if (++stall > stall_limit && !bland) {
                bland = true;  // anti-cycling from here on
                notes::emit("simplex-bland", "switched to smallest-index pivoting after a stall");
            }
        } else {
            stall = 0;
        }
    }

    SimplexResult res;
    res.x.assign(static_cast<std::size_t>(na), 0.0);
    res.y.assign(static_cast<std::size_t>(nr), 0.0);
    for (int k = 0; k < na; ++k) {
        double v = -cred[static_cast<std::size_t>(soff + k)];
        if (v < 0.0) v = 0.0;
        if (boxed && v > 1.0) v = 1.0;
        res.x[static_cast<std::size_t>(k)] = v;
    }
    for (int r = 0; r < na; ++r)
        if (basis[static_cast<std::size_t>(r)] < nr)
            res.y[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] = std::max(0.0, rhs[static_cast<std::size_t>(r)]);
    res.value = obj;
    return res;
}

// Exponential-weight greedy: raise the most useful column until all demands
// are met fractionally, then shrink redundancy in one reverse pass. Produces a
// feasible warm-start support for the pricing loop.
std::vector<double> greedy_cover(const LpProblem& lp) {
    const int nr = static_cast<int>(lp.rows.size());
    const int nc = static_cast<int>(lp.cols.size());
    std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(nc));
    for (int r = 0; r < nr; ++r)
        for (int c : lp.row_cols[static_cast<std::size_t>(r)]) col_rows[static_cast<std::size_t>(c)].push_back(r);

    std::vector<double> x(static_cast<std::size_t>(nc), 0.0);
    std::vector<double> slack = lp.rhs;  // remaining demand per row
    const double upper = lp.bounded ? 1.0 : std::numeric_limits<double>::infinity();

    for (;;) {
        int pick = -1;
        double best = 0.0;
        for (int c = 0; c < nc; ++c) {
            if (x[static_cast<std::size_t>(c)] >= upper) continue;
            double score = 0.0;
            for (int r : col_rows[static_cast<std::size_t>(c)])
                if (slack[static_cast<std::size_t>(r)] > 0.0)
                    score += std::exp(std::min(30.0, slack[static_cast<std::size_t>(r)]));
            if (score > best + 1e-15) {
                best = score;
                pick = c;
            }
        }
        if (pick < 0) break;  // all demands met
        double step = upper - x[static_cast<std::size_t>(pick)];
        for (int r : col_rows[static_cast<std::size_t>(pick)])
            if (slack[static_cast<std::size_t>(r)] > 0.0) step = std::min(step, slack[static_cast<std::size_t>(r)]);
        if (!(step > 0.0)) break;
        x[static_cast<std::size_t>(pick)] += step;
        for (int r : col_rows[static_cast<std::size_t>(pick)]) slack[static_cast<std::size_t>(r)] -= step;
    }

    std::vector<double> surplus(static_cast<std::size_t>(nr), 0.0);
    for (int r = 0; r < nr; ++r) surplus[static_cast<std::size_t>(r)] = -slack[static_cast<std::size_t>(r)];
    for (int c = nc - 1; c >= 0; --c) {
        if (x[static_cast<std::size_t>(c)] <= 0.0) continue;
        double cut = x[static_cast<std::size_t>(c)];
        for (int r : col_rows[static_cast<std::size_t>(c)]) cut = std::min(cut, surplus[static_cast<std::size_t>(r)]);
        if (cut <= 0.0) continue;
        x[static_cast<std::size_t>(c)] -= cut;
        for (int r : col_rows[static_cast<std::size_t>(c)]) surplus[static_cast<std::size_t>(r)] -= cut;
    }
    return x;
}

FractionalSolution package(const LpProblem& lp, const std::vector<int>& active, const std::vector<double>& xa,
                           const LpOptions& opts) {
    FractionalSolution sol;
    std::vector<double> full(lp.cols.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) full[static_cast<std::size_t>(active[k])] = xa[k];

    double value = 0.0;
    for (std::size_t c = 0; c < full.size(); ++c) {
        if (full[c] <= 1e-15) continue;
        sol.x.set(lp.cols[c], full[c]);
        value += full[c];
    }
    sol.value = value;
    sol.tolerance = opts.eps_feas;

    // Independent feasibility recheck against the problem rows.
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        double got = 0.0;
        for (int c : lp.row_cols[r]) got += full[static_cast<std::size_t>(c)];
        if (got < lp.rhs[r] - opts.eps_feas)
            throw InternalError("solution violates the covering row of point " + std::to_string(lp.rows[r]) + " by " +
                                std::to_string(lp.rhs[r] - got));
    }
    return sol;
}

}  // namespace

LpProblem build_lp(const MultiCoverInstance& inst) {
    LpProblem lp;
    lp.bounded = !inst.repetition_allowed();
    for (const auto& r : inst.ranges()) lp.cols.push_back(r.id);
    for (const auto& p : inst.points()) {
        if (p.demand <= 0) continue;
        lp.rows.push_back(p.id);
        lp.rhs.push_back(static_cast<double>(p.demand));
        std::vector<int> cols;
        for (RangeId rid : inst.covering_ranges(p.id)) cols.push_back(static_cast<int>(inst.range_index(rid)));
        lp.row_cols.push_back(std::move(cols));
    }
    return lp;
}

std::string dump_lp(const LpProblem& lp) {
    std::ostringstream out;
    out << "lp " << lp.rows.size() << " " << lp.cols.size() << " " << (lp.bounded ? "1" : "inf") << "\n";
    for (std::size_t c = 0; c < lp.cols.size(); ++c) out << "col " << c << " range " << lp.cols[c] << "\n";
    for (std::size_t r = 0; r < lp.rows.size(); ++r)
        out << "row " << r << " point " << lp.rows[r] << " rhs " << lp.rhs[r] << "\n";
    for (std::size_t r = 0; r < lp.rows.size(); ++r)
        for (int c : lp.row_cols[r]) out << "a " << r << " " << c << " 1\n";
    return out.str();
}

FractionalSolution solve_lp(const MultiCoverInstance& inst, const LpOptions& opts) {
    require_coverable(inst);
    LpProblem lp = build_lp(inst);
    const int nc = static_cast<int>(lp.cols.size());

    if (lp.rows.empty()) return FractionalSolution{};

    std::vector<int> all(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c) all[static_cast<std::size_t>(c)] = c;

    if (opts.method == LpMethod::kSimplex) {
        SimplexResult res = simplex_on_dual(lp, all, opts);
        return package(lp, all, res.x, opts);
    }

    // Iterative method: greedy support, restricted exact solves, pricing.
    std::vector<double> warm = greedy_cover(lp);
    std::set<int> support;
    for (int c = 0; c < nc; ++c)
        if (warm[static_cast<std::size_t>(c)] > 0.0) support.insert(c);
    // Rows not touched by the warm support (zero-demand-free rows are always
    // touched since greedy terminates feasible) keep the solve well-posed.

    SimplexResult res;
    std::vector<int> active;
    for (int round = 0;; ++round) {
        if (round >= opts.max_pricing_rounds)
            throw InternalError("pricing failed to converge in " + std::to_string(opts.max_pricing_rounds) + " rounds");
        active.assign(support.begin(), support.end());
        res = simplex_on_dual(lp, active, opts);

        // Price excluded columns: a column improves when its covering rows
        // carry more than one unit of dual weight.
        std::vector<std::pair<double, int>> violated;
        double lb = 0.0;
        for (std::size_t r = 0; r < lp.rows.size(); ++r) lb += lp.rhs[r] * res.y[r];
        std::vector<double> colw(static_cast<std::size_t>(nc), 0.0);
        for (std::size_t r = 0; r < lp.rows.size(); ++r)
            for (int c : lp.row_cols[r]) colw[static_cast<std::size_t>(c)] += res.y[r];
        bool any_excluded_violation = false;
        for (int c = 0; c < nc; ++c) {
            double v = colw[static_cast<std::size_t>(c)] - 1.0;
            if (v > 1e-9 && !support.count(c)) {
                violated.emplace_back(v, c);
                any_excluded_violation = true;
            }
            if (v > 0.0 && lp.bounded) lb -= v;  // box duals absorb the excess
        }
        if (!any_excluded_violation) break;  // optimal over all columns
        if (lp.bounded && lb > 0.0 && res.value <= (1.0 + opts.eps_opt_iterative) * lb) break;

        std::sort(violated.begin(), violated.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
        std::size_t take = std::min<std::size_t>(violated.size(), 50);
        for (std::size_t i = 0; i < take; ++i) support.insert(violated[i].second);
    }
    return package(lp, active, res.x, opts);
}

double lp_value(const MultiCoverInstance& inst, const LpOptions& opts) { return solve_lp(inst, opts).value; }

}  // namespace multicover
