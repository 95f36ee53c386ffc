#pragma once

// Domain types and oracle-grade cluster cost evaluation for partial
// min-sum-of-squares clustering (k-means with at most M discarded outliers).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pmssc/errors.hpp"

namespace pmssc {

// One input point: coordinates, a positive weight, and its contribution to
// the global outlier budget (1 in the plain partial model).
struct WeightedPoint {
    std::vector<double> coords;
    double weight = 1.0;
    long long budget = 1;
};

enum class SolveMode {
    exact_1d,
    budget_1d,
    medoid_1d,
    k1_special,
    heuristic_weighted,
    projected,
    oracle,
};

inline const char* to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::exact_1d: return "exact-1d";
        case SolveMode::budget_1d: return "budget-1d";
        case SolveMode::medoid_1d: return "medoid-1d";
        case SolveMode::k1_special: return "k1-special";
        case SolveMode::heuristic_weighted: return "heuristic-weighted";
        case SolveMode::projected: return "projected";
        case SolveMode::oracle: return "oracle";
    }
    return "unknown";
}

struct SolutionCluster {
    std::vector<std::size_t> members;  // original input indices, ascending
    std::vector<double> center;        // centroid or medoid coordinates
    double cost = 0.0;
    // Index of a point discarded strictly inside the cluster's sorted span
    // (heuristic mode only). The point itself is listed under outliers.
    std::optional<std::size_t> inner_outlier;
};

struct Solution {
    std::vector<SolutionCluster> clusters;
    std::vector<std::size_t> outliers;  // original input indices, ascending
    double total_cost = 0.0;
    SolveMode mode = SolveMode::oracle;
    std::vector<std::string> notes;
};

// A 1D instance in sorted order. perm maps sorted position -> original input
// index, so results can always be reported against the caller's row order.
struct Instance1D {
    std::vector<double> x;       // ascending, duplicates permitted
    std::vector<double> w;       // positive weights
    std::vector<long long> m;    // outlier budget contributions
    std::vector<std::size_t> perm;
    int k = 1;
    long long budget = 0;

    std::size_t size() const { return x.size(); }

    bool unit_weights() const {
        return std::all_of(w.begin(), w.end(), [](double v) { return v == 1.0; });
    }
    bool unit_budgets() const {
        return std::all_of(m.begin(), m.end(), [](long long v) { return v == 1; });
    }
    long long budget_sum() const {
        return std::accumulate(m.begin(), m.end(), 0LL);
    }
};

// |a - b| measured against 1 + max(|a|, |b|), so zero-cost cases compare sanely.
inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

struct CentroidResult {
    std::vector<double> center;
    double cost = 0.0;
};

struct MedoidResult {
    std::size_t index = 0;  // position in the input list
    double cost = 0.0;
};

namespace detail {

inline void check_point_set(const std::vector<std::vector<double>>& points,
                            const std::vector<double>& weights) {
    if (points.empty())
        throw domain_error("cluster cost needs at least one point");
    if (points.size() != weights.size())
        throw domain_error("points and weights differ in length");
    const std::size_t dim = points.front().size();
    if (dim == 0)
        throw dimension_error("points need at least one coordinate");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim)
            throw dimension_error("points mix coordinate dimensions");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw domain_error("weights must be positive and finite");
        for (double c : points[i])
            if (!std::isfinite(c)) throw domain_error("coordinates must be finite");
    }
}

}  // namespace detail

// Weighted centroid and within-cluster cost, straight from the definition:
// center = sum(w_i x_i) / sum(w_i), cost = sum(w_i * ||x_i - center||^2).
inline CentroidResult centroid_cost(const std::vector<std::vector<double>>& points,
                                    const std::vector<double>& weights) {
    detail::check_point_set(points, weights);
    const std::size_t dim = points.front().size();
    CentroidResult res;
    res.center.assign(dim, 0.0);
    double total_weight = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total_weight += weights[i];
        for (std::size_t d = 0; d < dim; ++d) res.center[d] += weights[i] * points[i][d];
    }
    for (double& c : res.center) c /= total_weight;
    res.cost = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double delta = points[i][d] - res.center[d];
            sq += delta * delta;
        }
        res.cost += weights[i] * sq;
    }
    return res;
}

// Best discrete center chosen among the members; ties toward the smallest index.
inline MedoidResult medoid_cost(const std::vector<std::vector<double>>& points,
                                const std::vector<double>& weights) {
    detail::check_point_set(points, weights);
    const std::size_t dim = points.front().size();
    MedoidResult best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t c = 0; c < points.size(); ++c) {
        double cost = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double sq = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double delta = points[i][d] - points[c][d];
                sq += delta * delta;
            }
            cost += weights[i] * sq;
        }
        if (cost < best.cost) best = {c, cost};
    }
    return best;
}

inline CentroidResult centroid_cost_1d(const std::vector<double>& xs,
                                       const std::vector<double>& ws) {
    std::vector<std::vector<double>> pts(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts[i] = {xs[i]};
    return centroid_cost(pts, ws);
}

// Validates a raw point list for the 1D solvers, sorts it (stably, so ties keep
// input order), and records the sorted-position -> input-index permutation.
// unit_budget selects the plain partial model: every budget must be 1 and
// K + M <= N so at least K points survive to fill K clusters.
inline Instance1D validate_and_sort(const std::vector<WeightedPoint>& points, int k,
                                    long long m, bool unit_budget) {
    if (points.empty()) throw parameter_error("instance needs at least one point");
    if (k < 1) throw parameter_error("k must be at least 1");
    if (m < 0) throw parameter_error("m must be nonnegative");
    const std::size_t n = points.size();
    const std::size_t dim = points.front().coords.size();
    if (dim != 1) throw dimension_error("1D solvers need one coordinate per point");

    for (const auto& p : points) {
        if (p.coords.size() != 1)
            throw dimension_error("points mix coordinate dimensions");
        if (!std::isfinite(p.coords[0]))
            throw domain_error("coordinates must be finite");
        if (!(p.weight > 0.0) || !std::isfinite(p.weight))
            throw domain_error("weights must be positive and finite");
        if (p.budget < 0) throw domain_error("budgets must be nonnegative");
        if (unit_budget && p.budget != 1)
            throw parameter_error("plain partial model needs unit budgets; use budget mode");
    }
    if (unit_budget && static_cast<long long>(k) + m > static_cast<long long>(n))
        throw parameter_error("infeasible: k + m must not exceed the number of points");

    Instance1D inst;
    inst.k = k;
    inst.budget = m;
    inst.perm.resize(n);
    std::iota(inst.perm.begin(), inst.perm.end(), std::size_t{0});
    std::stable_sort(inst.perm.begin(), inst.perm.end(),
                     [&](std::size_t a, std::size_t b) {
                         return points[a].coords[0] < points[b].coords[0];
                     });
    inst.x.resize(n);
    inst.w.resize(n);
    inst.m.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const auto& p = points[inst.perm[pos]];
        inst.x[pos] = p.coords[0];
        inst.w[pos] = p.weight;
        inst.m[pos] = p.budget;
    }
    return inst;
}

}  // namespace pmssc
