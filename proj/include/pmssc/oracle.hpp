#pragma once

// Exhaustive exact solver for small instances in any dimension: enumerate every
// budget-feasible outlier subset, then every partition of the survivors into at
// most K nonempty blocks (restricted growth strings), costing each block from
// first principles. No interval structure is assumed anywhere, so the 1D
// solvers can be validated against this rather than share assumptions with it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "pmssc/core.hpp"
#include "pmssc/errors.hpp"

namespace pmssc {

enum class CostKind { centroid, medoid };

struct OracleConfig {
    CostKind cost_kind = CostKind::centroid;
    bool budget_mode = false;  // when false every point costs 1 outlier unit
    std::size_t max_n = 14;    // caps the 2^N outlier subset enumeration
};

namespace detail {

// Visit all partitions of {0, .., n-1} into at most max_blocks nonempty blocks,
// encoded as restricted growth strings: labels[0] = 0 and each next label is at
// most one past the running maximum.
template <typename Visitor>
inline void for_each_partition(std::size_t n, std::size_t max_blocks, Visitor&& visit) {
    if (n == 0) {
        std::vector<std::size_t> empty;
        visit(empty, std::size_t{0});
        return;
    }
    std::vector<std::size_t> labels(n, 0);
    std::vector<std::size_t> prefix_max(n, 0);
    while (true) {
        std::size_t blocks = prefix_max[n - 1] + 1;
        visit(labels, blocks);
        std::size_t i = n;
        while (--i > 0) {
            const std::size_t cap = std::min(prefix_max[i - 1] + 1, max_blocks - 1);
            if (labels[i] < cap) {
                ++labels[i];
                prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
                for (std::size_t j = i + 1; j < n; ++j) {
                    labels[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
        }
        if (i == 0) return;
    }
}

struct OracleCandidate {
    double cost = std::numeric_limits<double>::infinity();
    std::uint32_t outlier_mask = 0;
    std::vector<std::uint32_t> block_masks;  // ascending
};

// Lexicographic key (outlier mask, block masks) breaks exact cost ties so
// results are run-to-run identical.
inline bool candidate_precedes(const OracleCandidate& a, const OracleCandidate& b) {
    if (a.outlier_mask != b.outlier_mask) return a.outlier_mask < b.outlier_mask;
    return a.block_masks < b.block_masks;
}

struct MaskCosts {
    std::vector<double> cost;  // cost[mask - 1] for every nonempty subset mask
};

inline MaskCosts subset_costs(const std::vector<WeightedPoint>& points, CostKind kind) {
    const std::size_t n = points.size();
    MaskCosts table;
    table.cost.resize((std::size_t{1} << n) - 1);
    std::vector<std::vector<double>> pts;
    std::vector<double> ws;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        pts.clear();
        ws.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                pts.push_back(points[i].coords);
                ws.push_back(points[i].weight);
            }
        }
        table.cost[mask - 1] = kind == CostKind::medoid ? medoid_cost(pts, ws).cost
                                                        : centroid_cost(pts, ws).cost;
    }
    return table;
}

inline void check_oracle_input(const std::vector<WeightedPoint>& points, int k, long long m,
                               const OracleConfig& config) {
    if (points.empty()) throw parameter_error("instance needs at least one point");
    if (k < 1) throw parameter_error("k must be at least 1");
    if (m < 0) throw parameter_error("m must be nonnegative");
    if (points.size() > config.max_n || points.size() > 31)
        throw guard_error("instance too large for exhaustive enumeration");
    const std::size_t dim = points.front().coords.size();
    for (const auto& p : points)
        if (p.coords.size() != dim) throw dimension_error("points mix coordinate dimensions");
}

template <typename Visitor>
inline void for_each_oracle_candidate(const std::vector<WeightedPoint>& points, int k,
                                      long long m, const OracleConfig& config,
                                      Visitor&& visit) {
    const std::size_t n = points.size();
    const MaskCosts table = subset_costs(points, config.cost_kind);
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);

    std::vector<std::size_t> survivors;
    std::vector<std::uint32_t> blocks;
    for (std::uint32_t out = 0; out <= full; ++out) {
        long long spent = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (out & (1u << i)) spent += config.budget_mode ? points[i].budget : 1;
        if (spent > m) continue;

        survivors.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (!(out & (1u << i))) survivors.push_back(i);

        for_each_partition(survivors.size(), static_cast<std::size_t>(k),
                           [&](const std::vector<std::size_t>& labels, std::size_t nblocks) {
                               blocks.assign(nblocks, 0);
                               for (std::size_t s = 0; s < labels.size(); ++s)
                                   blocks[labels[s]] |=
                                       (1u << static_cast<std::uint32_t>(survivors[s]));
                               double cost = 0.0;
                               for (std::uint32_t bm : blocks) cost += table.cost[bm - 1];
                               OracleCandidate cand;
                               cand.cost = cost;
                               cand.outlier_mask = out;
                               cand.block_masks.assign(blocks.begin(), blocks.end());
                               std::sort(cand.block_masks.begin(), cand.block_masks.end());
                               visit(std::move(cand));
                           });
    }
}

inline Solution candidate_to_solution(const std::vector<WeightedPoint>& points,
                                      const OracleCandidate& cand, CostKind kind) {
    Solution sol;
    sol.mode = SolveMode::oracle;
    sol.total_cost = cand.cost;
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        if (cand.outlier_mask & (1u << i)) sol.outliers.push_back(i);
    for (std::uint32_t bm : cand.block_masks) {
        SolutionCluster cluster;
        std::vector<std::vector<double>> pts;
        std::vector<double> ws;
        for (std::size_t i = 0; i < n; ++i) {
            if (bm & (1u << i)) {
                cluster.members.push_back(i);
                pts.push_back(points[i].coords);
                ws.push_back(points[i].weight);
            }
        }
        if (kind == CostKind::medoid) {
            const MedoidResult med = medoid_cost(pts, ws);
            cluster.center = pts[med.index];
            cluster.cost = med.cost;
        } else {
            CentroidResult cen = centroid_cost(pts, ws);
            cluster.center = std::move(cen.center);
            cluster.cost = cen.cost;
        }
        sol.clusters.push_back(std::move(cluster));
    }
    return sol;
}

}  // namespace detail

// Global optimum by literal enumeration. Deterministic: exact cost ties are
// resolved by the lexicographic (outlier set, block masks) key.
inline Solution brute_force(const std::vector<WeightedPoint>& points, int k, long long m,
                            const OracleConfig& config = {}) {
    detail::check_oracle_input(points, k, m, config);
    detail::OracleCandidate best;
    bool have = false;
    detail::for_each_oracle_candidate(
        points, k, m, config, [&](detail::OracleCandidate cand) {
            if (!have || cand.cost < best.cost ||
                (cand.cost == best.cost && detail::candidate_precedes(cand, best))) {
                best = std::move(cand);
                have = true;
            }
        });
    if (!have) throw internal_error("oracle enumeration produced no candidate");
    return detail::candidate_to_solution(points, best, config.cost_kind);
}

// Every solution whose cost is within tolerance of the optimum, in
// lexicographic order. Backtracking tests assert membership in this set.
inline std::vector<Solution> enumerate_optima(const std::vector<WeightedPoint>& points, int k,
                                              long long m, const OracleConfig& config,
                                              double tolerance) {
    detail::check_oracle_input(points, k, m, config);
    std::vector<detail::OracleCandidate> keep;
    double best = std::numeric_limits<double>::infinity();
    detail::for_each_oracle_candidate(
        points, k, m, config, [&](detail::OracleCandidate cand) {
            if (cand.cost > best + tolerance) return;
            if (cand.cost < best) {
                best = cand.cost;
                std::erase_if(keep, [&](const detail::OracleCandidate& c) {
                    return c.cost > best + tolerance;
                });
            }
            keep.push_back(std::move(cand));
        });
    std::sort(keep.begin(), keep.end(),
              [](const detail::OracleCandidate& a, const detail::OracleCandidate& b) {
                  return detail::candidate_precedes(a, b);
              });
    std::vector<Solution> out;
    out.reserve(keep.size());
    for (const auto& cand : keep)
        out.push_back(detail::candidate_to_solution(points, cand, config.cost_kind));
    return out;
}

// Number of partitions visited for n items and at most max_blocks blocks;
// sanity hook for the enumerator (sums of Stirling numbers).
inline std::uint64_t count_partitions(std::size_t n, std::size_t max_blocks) {
    std::uint64_t count = 0;
    detail::for_each_partition(n, max_blocks,
                               [&](const std::vector<std::size_t>&, std::size_t) { ++count; });
    return count;
}

}  // namespace pmssc
