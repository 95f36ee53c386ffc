#pragma once

// Linear-time single-cluster solvers: the unweighted sliding window over all
// length-(N-M) ranges, and the weighted leave-one-out scan for M = 1.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "pmssc/cluster_cost.hpp"
#include "pmssc/core.hpp"
#include "pmssc/errors.hpp"

namespace pmssc {

namespace detail {

// Remove the leftmost point from a range's stats (inverse of extend_left).
inline RunningClusterStats shrink_left(const RunningClusterStats& s, double x, double w) {
    RunningClusterStats r;
    r.v = s.v - w;
    r.b = (s.v * s.b - w * x) / r.v;
    r.c = s.c - w * (x - s.b) * (x - s.b) - r.v * (s.b - r.b) * (s.b - r.b);
    if (r.c < 0.0) r.c = 0.0;
    return r;
}

inline Solution k1_solution(const Instance1D& inst, std::size_t lo, std::size_t hi,
                            std::size_t skip_inside, SolveMode tag) {
    Solution sol;
    sol.mode = tag;
    SolutionCluster cluster;
    std::vector<std::vector<double>> pts;
    std::vector<double> ws;
    for (std::size_t pos = 0; pos < inst.size(); ++pos) {
        const bool in_window = pos >= lo && pos <= hi && pos != skip_inside;
        if (in_window) {
            cluster.members.push_back(inst.perm[pos]);
            pts.push_back({inst.x[pos]});
            ws.push_back(inst.w[pos]);
        } else {
            sol.outliers.push_back(inst.perm[pos]);
        }
    }
    if (!cluster.members.empty()) {
        CentroidResult cen = centroid_cost(pts, ws);
        cluster.center = std::move(cen.center);
        cluster.cost = cen.cost;
        sol.total_cost = cluster.cost;
        std::sort(cluster.members.begin(), cluster.members.end());
        sol.clusters.push_back(std::move(cluster));
    }
    std::sort(sol.outliers.begin(), sol.outliers.end());
    return sol;
}

}  // namespace detail

// K = 1, unweighted: the optimal cluster is one of the N - M length windows
// c_{0,N-M-1}, c_{1,N-M}, ..., slid with O(1) stats updates. Ties keep the
// leftmost window.
inline Solution solve_k1_unweighted(const Instance1D& inst, long long m) {
    const std::size_t n = inst.size();
    if (m < 0 || m >= static_cast<long long>(n))
        throw parameter_error("k=1 window needs 0 <= m < n");
    if (!inst.unit_weights())
        throw mode_error("weighted input: use solve_k1_weighted_m1 with m=1");

    const std::size_t len = n - static_cast<std::size_t>(m);
    RunningClusterStats s = singleton(inst.x[0], inst.w[0]);
    for (std::size_t pos = 1; pos < len; ++pos) s = extend_right(s, inst.x[pos], inst.w[pos]);

    double best = s.c;
    std::size_t best_lo = 0;
    for (std::size_t lo = 1; lo + len <= n; ++lo) {
        s = extend_right(s, inst.x[lo + len - 1], inst.w[lo + len - 1]);
        s = detail::shrink_left(s, inst.x[lo - 1], inst.w[lo - 1]);
        if (s.c < best) {
            best = s.c;
            best_lo = lo;
        }
    }
    return detail::k1_solution(inst, best_lo, best_lo + len - 1, n, SolveMode::k1_special);
}

// K = 1, M = 1, arbitrary positive weights: compare keeping everything with
// every single removal, each costed in O(1) by merging prefix and suffix stats.
// Removal ties go to the smallest position; keeping everything wins its ties.
inline Solution solve_k1_weighted_m1(const Instance1D& inst) {
    const std::size_t n = inst.size();
    std::vector<RunningClusterStats> prefix(n);  // prefix[t] = stats of [0, t]
    std::vector<RunningClusterStats> suffix(n);  // suffix[t] = stats of [t, n-1]
    prefix[0] = singleton(inst.x[0], inst.w[0]);
    for (std::size_t t = 1; t < n; ++t)
        prefix[t] = extend_right(prefix[t - 1], inst.x[t], inst.w[t]);
    suffix[n - 1] = singleton(inst.x[n - 1], inst.w[n - 1]);
    for (std::size_t t = n - 1; t-- > 0;)
        suffix[t] = extend_left(suffix[t + 1], inst.x[t], inst.w[t]);

    double best = prefix[n - 1].c;  // remove nothing
    std::size_t removed = n;
    for (std::size_t t = 0; t < n; ++t) {
        RunningClusterStats left = t > 0 ? prefix[t - 1] : RunningClusterStats{};
        RunningClusterStats right = t + 1 < n ? suffix[t + 1] : RunningClusterStats{};
        const double cand = merge(left, right).c;
        if (cand < best) {
            best = cand;
            removed = t;
        }
    }
    if (removed == n) return detail::k1_solution(inst, 0, n - 1, n, SolveMode::k1_special);
    return detail::k1_solution(inst, 0, n - 1, removed, SolveMode::k1_special);
}

}  // namespace pmssc
