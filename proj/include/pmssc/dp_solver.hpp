#pragma once

// Exact dynamic programs for partial clustering of sorted 1D points, plus the
// weighted one-inner-outlier heuristic and the budgeted variant.
//
// State: value(i, k, m) = optimal cost of covering the first i sorted points
// with at most k clusters, discarding outliers of total budget at most m.
// Clusters are contiguous position ranges; a range [j, i-1] (0-based) chosen
// as the last cluster leaves the subproblem (j, k-1, m). Skipping point i-1
// as an outlier leaves (i-1, k, m - budget_{i-1}). Cost columns for ranges
// ending at i-1 are computed, consumed, and discarded per outer iteration.
//
// Transition bounds in the plain (unit budget) model: the last cluster start
// j+1 (1-based) ranges over [k+m, i]; with an inner outlier (heuristic mode,
// which charges it against m) the saturated start is one earlier, [k+m-1, i-1].
// The budgeted model searches j+1 in [1, i] since prefix feasibility depends
// on the budgets themselves.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pmssc/cluster_cost.hpp"
#include "pmssc/core.hpp"
#include "pmssc/errors.hpp"

namespace pmssc {

enum class DpMode { exact, budget, medoid, heuristic };

inline const char* to_string(DpMode mode) {
    switch (mode) {
        case DpMode::exact: return "exact";
        case DpMode::budget: return "budget";
        case DpMode::medoid: return "medoid";
        case DpMode::heuristic: return "heuristic";
    }
    return "unknown";
}

struct DPChoice {
    enum class Kind : std::uint8_t { none, skip, cut };
    Kind kind = Kind::none;
    std::int32_t cut_start = -1;  // 0-based sorted position where the last cluster starts
    std::int32_t dropped = -1;    // 0-based inner outlier position, -1 when none
};

// Values and parent pointers over (i, k, m) with i in [0, N], k in [0, K],
// m in [0, M]. Row k = 0 is the base layer: value 0 when the whole prefix is
// removable within budget m, infinity otherwise.
class DPMatrix {
public:
    DPMatrix(std::size_t n, int k, long long m, DpMode mode)
        : n_(n), k_(k), m_(m), mode_(mode),
          values_((n + 1) * static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(m + 1),
                  std::numeric_limits<double>::infinity()),
          choices_(values_.size()) {}

    std::size_t points() const { return n_; }
    int clusters() const { return k_; }
    long long budget() const { return m_; }
    DpMode mode() const { return mode_; }

    double value(std::size_t i, int k, long long m) const { return values_[index(i, k, m)]; }
    const DPChoice& choice(std::size_t i, int k, long long m) const {
        return choices_[index(i, k, m)];
    }

    void set(std::size_t i, int k, long long m, double value, DPChoice choice) {
        values_[index(i, k, m)] = value;
        choices_[index(i, k, m)] = choice;
    }

private:
    std::size_t index(std::size_t i, int k, long long m) const {
        if (i > n_ || k < 0 || k > k_ || m < 0 || m > m_)
            throw internal_error("dp matrix index out of range");
        return (i * static_cast<std::size_t>(k_ + 1) + static_cast<std::size_t>(k)) *
                   static_cast<std::size_t>(m_ + 1) +
               static_cast<std::size_t>(m);
    }

    std::size_t n_;
    int k_;
    long long m_;
    DpMode mode_;
    std::vector<double> values_;
    std::vector<DPChoice> choices_;
};

struct SolveResult {
    Solution solution;
    DPMatrix matrix;
};

struct HeuristicOptions {
    bool inner_outliers = true;  // false restricts to plain interval clusters
};

namespace detail {

inline void require_unit_weights(const Instance1D& inst, const char* hint) {
    if (!inst.unit_weights()) throw mode_error(hint);
}

inline void require_unit_budgets(const Instance1D& inst) {
    if (!inst.unit_budgets())
        throw parameter_error("this mode needs unit budgets; use budget mode");
}

inline void require_plain_feasible(const Instance1D& inst, int k, long long m) {
    if (k < 1) throw parameter_error("k must be at least 1");
    if (m < 0) throw parameter_error("m must be nonnegative");
    if (static_cast<long long>(k) + m > static_cast<long long>(inst.size()))
        throw parameter_error("infeasible: k + m must not exceed the number of points");
}

// Forward pass shared by all four modes.
inline DPMatrix forward_pass(const Instance1D& inst, int k_max, long long m_req, DpMode mode,
                             bool inner_outliers) {
    const std::size_t n = inst.size();
    const bool budget_mode = mode == DpMode::budget;
    const bool heuristic = mode == DpMode::heuristic && inner_outliers;

    // Prefix budget sums; in the unit models these are just the counts.
    std::vector<long long> prefix_budget(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix_budget[i + 1] = prefix_budget[i] + inst.m[i];

    long long m_cap = budget_mode ? std::min(m_req, prefix_budget[n]) : m_req;
    DPMatrix dp(n, k_max, m_cap, mode);
    const double inf = std::numeric_limits<double>::infinity();

    // Base layer k = 0: a prefix is free iff it fits entirely in the budget.
    // An empty prefix is free at any k.
    for (std::size_t i = 0; i <= n; ++i)
        for (long long m = 0; m <= m_cap; ++m)
            if (prefix_budget[i] <= m) dp.set(i, 0, m, 0.0, DPChoice{DPChoice::Kind::skip, -1, -1});
    for (int k = 1; k <= k_max; ++k)
        for (long long m = 0; m <= m_cap; ++m)
            dp.set(0, k, m, 0.0, DPChoice{DPChoice::Kind::skip, -1, -1});

    std::vector<double> col0;          // range costs ending at i-1
    std::vector<double> col1;          // one-inner-outlier costs (heuristic)
    std::vector<std::int32_t> col1drop;

    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t end = i - 1;
        if (mode == DpMode::medoid)
            medoid_costs_ending_at(inst, end, col0);
        else
            costs_ending_at(inst, end, col0);
        if (heuristic) {
            col1.assign(i, inf);
            col1drop.assign(i, -1);
            for (std::size_t t = 0; t + 1 <= end; ++t) {
                const InnerOutlierResult r = one_inner_outlier_cost(inst, t, end);
                col1[t] = r.cost;
                col1drop[t] = static_cast<std::int32_t>(r.dropped);
            }
        }

        for (int k = 1; k <= k_max; ++k) {
            for (long long m = 0; m <= m_cap; ++m) {
                // Trivial zero region: everything fits in singletons plus outliers.
                if (!budget_mode && static_cast<long long>(i) <= static_cast<long long>(k) + m) {
                    DPChoice ch = m >= 1 ? DPChoice{DPChoice::Kind::skip, -1, -1}
                                         : DPChoice{DPChoice::Kind::cut,
                                                    static_cast<std::int32_t>(i - 1), -1};
                    dp.set(i, k, m, 0.0, ch);
                    continue;
                }
                if (budget_mode && prefix_budget[i] <= m) {
                    dp.set(i, k, m, 0.0, DPChoice{DPChoice::Kind::skip, -1, -1});
                    continue;
                }

                double best = inf;
                DPChoice best_choice;

                // Last cluster [start, i-1]. Scanning starts in descending order
                // with strict improvement makes ties prefer the largest start
                // (smallest last cluster) and, at equal start, the plain cluster
                // over the inner-outlier one.
                const std::size_t lo0 =
                    budget_mode ? 0
                                : static_cast<std::size_t>(static_cast<long long>(k) + m - 1);
                const bool inner = heuristic && m >= 1;
                const std::size_t lo1 =
                    inner ? static_cast<std::size_t>(static_cast<long long>(k) + m - 2) : lo0;
                for (std::size_t start = i; start-- > std::min(lo0, lo1);) {
                    if (start >= lo0) {
                        const double prev = dp.value(start, k - 1, m);
                        if (prev != inf) {
                            const double cand = prev + col0[start];
                            if (cand < best) {
                                best = cand;
                                best_choice = {DPChoice::Kind::cut,
                                               static_cast<std::int32_t>(start), -1};
                            }
                        }
                    }
                    if (inner && start >= lo1 && start + 1 < i && col1[start] != inf) {
                        const double prev = dp.value(start, k - 1, m - 1);
                        if (prev != inf) {
                            const double cand = prev + col1[start];
                            if (cand < best) {
                                best = cand;
                                best_choice = {DPChoice::Kind::cut,
                                               static_cast<std::int32_t>(start), col1drop[start]};
                            }
                        }
                    }
                }

                // Point i-1 as an outlier; preferred over cuts unless a cut is
                // strictly better.
                const long long mi = budget_mode ? inst.m[end] : 1;
                if (mi <= m) {
                    const double cand = dp.value(i - 1, k, m - mi);
                    if (cand <= best) {
                        best = cand;
                        best_choice = {DPChoice::Kind::skip, -1, -1};
                    }
                }

                if (best == inf)
                    throw internal_error("dp state has no feasible transition");
                dp.set(i, k, m, best, best_choice);
            }
        }
    }
    return dp;
}

struct RawCluster {
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::int32_t dropped = -1;
};

inline Solution assemble(const DPMatrix& dp, const Instance1D& inst,
                         std::vector<RawCluster> raw, std::vector<std::size_t> outlier_positions,
                         SolveMode tag) {
    Solution sol;
    sol.mode = tag;
    sol.total_cost = dp.value(dp.points(), dp.clusters(), dp.budget());

    std::sort(raw.begin(), raw.end(),
              [](const RawCluster& a, const RawCluster& b) { return a.lo < b.lo; });

    double recomputed_total = 0.0;
    for (const RawCluster& rc : raw) {
        std::size_t lo = rc.lo, hi = rc.hi;
        std::int32_t dropped = rc.dropped;
        if (dropped >= 0) {
            outlier_positions.push_back(static_cast<std::size_t>(dropped));
            // A dropped endpoint is just a shorter cluster with a gap outlier.
            if (static_cast<std::size_t>(dropped) == lo) {
                ++lo;
                dropped = -1;
            } else if (static_cast<std::size_t>(dropped) == hi) {
                --hi;
                dropped = -1;
            }
        }

        SolutionCluster cluster;
        std::vector<std::vector<double>> pts;
        std::vector<double> ws;
        for (std::size_t pos = lo; pos <= hi; ++pos) {
            if (dropped >= 0 && pos == static_cast<std::size_t>(dropped)) continue;
            cluster.members.push_back(inst.perm[pos]);
            pts.push_back({inst.x[pos]});
            ws.push_back(inst.w[pos]);
        }
        if (dp.mode() == DpMode::medoid) {
            const MedoidResult med = medoid_cost(pts, ws);
            cluster.center = pts[med.index];
            cluster.cost = med.cost;
        } else {
            CentroidResult cen = centroid_cost(pts, ws);
            cluster.center = std::move(cen.center);
            cluster.cost = cen.cost;
        }
        if (dropped >= 0) cluster.inner_outlier = inst.perm[static_cast<std::size_t>(dropped)];
        std::sort(cluster.members.begin(), cluster.members.end());
        recomputed_total += cluster.cost;
        sol.clusters.push_back(std::move(cluster));
    }

    if (!rel_close(recomputed_total, sol.total_cost, 1e-9))
        throw internal_error("backtracked clusters disagree with the dp optimum");

    sol.outliers.reserve(outlier_positions.size());
    for (std::size_t pos : outlier_positions) sol.outliers.push_back(inst.perm[pos]);
    std::sort(sol.outliers.begin(), sol.outliers.end());
    return sol;
}

}  // namespace detail

// Reconstruct clusters and outliers by walking the stored parent choices.
inline Solution backtrack(const DPMatrix& dp, const Instance1D& inst) {
    const bool budget_mode = dp.mode() == DpMode::budget;
    std::vector<detail::RawCluster> raw;
    std::vector<std::size_t> outliers;

    std::size_t i = dp.points();
    int k = dp.clusters();
    long long m = dp.budget();
    while (i > 0) {
        if (k == 0) {
            // Base layer: the remaining prefix is entirely outliers.
            for (std::size_t pos = 0; pos < i; ++pos) outliers.push_back(pos);
            break;
        }
        const DPChoice& ch = dp.choice(i, k, m);
        switch (ch.kind) {
            case DPChoice::Kind::skip: {
                const long long mi = budget_mode ? inst.m[i - 1] : 1;
                if (mi > m) throw internal_error("corrupt parent chain: skip over budget");
                outliers.push_back(i - 1);
                m -= mi;
                i -= 1;
                break;
            }
            case DPChoice::Kind::cut: {
                if (ch.cut_start < 0 || static_cast<std::size_t>(ch.cut_start) >= i)
                    throw internal_error("corrupt parent chain: cut start out of range");
                detail::RawCluster rc;
                rc.lo = static_cast<std::size_t>(ch.cut_start);
                rc.hi = i - 1;
                rc.dropped = ch.dropped;
                if (ch.dropped >= 0) {
                    if (static_cast<std::size_t>(ch.dropped) < rc.lo ||
                        static_cast<std::size_t>(ch.dropped) > rc.hi || m < 1)
                        throw internal_error("corrupt parent chain: bad inner outlier");
                    m -= 1;
                }
                raw.push_back(rc);
                i = rc.lo;
                k -= 1;
                break;
            }
            case DPChoice::Kind::none:
                throw internal_error("corrupt parent chain: unset choice");
        }
    }

    SolveMode tag = SolveMode::exact_1d;
    switch (dp.mode()) {
        case DpMode::exact: tag = SolveMode::exact_1d; break;
        case DpMode::budget: tag = SolveMode::budget_1d; break;
        case DpMode::medoid: tag = SolveMode::medoid_1d; break;
        case DpMode::heuristic: tag = SolveMode::heuristic_weighted; break;
    }
    return detail::assemble(dp, inst, std::move(raw), std::move(outliers), tag);
}

// Exact solver for the plain (unweighted, unit budget) partial model.
inline SolveResult solve_unweighted(const Instance1D& inst, int k, long long m) {
    detail::require_plain_feasible(inst, k, m);
    detail::require_unit_weights(
        inst, "weighted input: use solve_weighted_heuristic or solve_budgeted");
    detail::require_unit_budgets(inst);
    DPMatrix dp = detail::forward_pass(inst, k, m, DpMode::exact, false);
    return {backtrack(dp, inst), std::move(dp)};
}

// Exact solver with medoid (member point) centers.
inline SolveResult solve_medoids(const Instance1D& inst, int k, long long m) {
    detail::require_plain_feasible(inst, k, m);
    detail::require_unit_weights(inst, "weighted input: medoid mode is unweighted");
    detail::require_unit_budgets(inst);
    DPMatrix dp = detail::forward_pass(inst, k, m, DpMode::medoid, false);
    return {backtrack(dp, inst), std::move(dp)};
}

// Budgeted variant: each point contributes its budget when discarded. Weights
// may be arbitrary. The search is restricted to contiguous clusters with
// outliers between them, which is optimal for homogeneous budgets; with
// heterogeneous budgets a cheaper solution may require discarding a point
// strictly inside a cluster's span, so treat the result as an upper bound
// in that regime.
inline SolveResult solve_budgeted(const Instance1D& inst, int k, long long m) {
    if (k < 1) throw parameter_error("k must be at least 1");
    if (m < 0) throw parameter_error("m must be nonnegative");
    const int k_eff = static_cast<int>(
        std::min<long long>(k, static_cast<long long>(inst.size())));
    DPMatrix dp = detail::forward_pass(inst, k_eff, m, DpMode::budget, false);
    return {backtrack(dp, inst), std::move(dp)};
}

// Primal heuristic for weighted instances: interval clusters, outliers between
// clusters, and optionally at most one discarded point inside each cluster.
inline SolveResult solve_weighted_heuristic(const Instance1D& inst, int k, long long m,
                                            HeuristicOptions options = {}) {
    detail::require_plain_feasible(inst, k, m);
    detail::require_unit_budgets(inst);
    DPMatrix dp = detail::forward_pass(inst, k, m, DpMode::heuristic, options.inner_outliers);
    return {backtrack(dp, inst), std::move(dp)};
}

// Optimal costs for every outlier budget 0..m at fixed k, from one solve.
inline std::vector<double> tradeoff_table(const Instance1D& inst, int k, long long m,
                                          DpMode mode) {
    SolveResult res = [&] {
        switch (mode) {
            case DpMode::exact: return solve_unweighted(inst, k, m);
            case DpMode::medoid: return solve_medoids(inst, k, m);
            case DpMode::budget: return solve_budgeted(inst, k, m);
            case DpMode::heuristic: return solve_weighted_heuristic(inst, k, m);
        }
        throw parameter_error("unknown trade-off mode");
    }();
    std::vector<double> table;
    table.reserve(static_cast<std::size_t>(m + 1));
    const long long cap = res.matrix.budget();
    for (long long b = 0; b <= m; ++b)
        table.push_back(b <= cap ? res.matrix.value(inst.size(), res.matrix.clusters(), b) : 0.0);
    return table;
}

}  // namespace pmssc
