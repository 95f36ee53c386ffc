#pragma once

// Solver-agnostic text emission of the integer-programming formulations:
// the compact big-M convex quadratic program over assignment variables, and
// the fully enumerated set-partitioning (extended) program for small N.
// An exhaustive evaluator cross-checks the extended model against the DP.
//
// Text format (see README for the full grammar): sections OBJECTIVE, BINARY,
// CONTINUOUS, SUBSETS (extended only) and CONSTRAINTS; one constraint per
// line as  name: term term ... <op> rhs;  squared continuous variables are
// written as var^2. Coefficients carry full double precision, and variable
// and constraint ordering is a pure function of the input, so identical
// input yields byte-identical output.

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "pmssc/core.hpp"
#include "pmssc/errors.hpp"
#include "pmssc/oracle.hpp"

namespace pmssc {

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double max_pairwise_sq_distance(const std::vector<WeightedPoint>& points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double sq = 0.0;
            for (std::size_t d = 0; d < points[i].coords.size(); ++d) {
                const double delta = points[i].coords[d] - points[j].coords[d];
                sq += delta * delta;
            }
            best = std::max(best, sq);
        }
    }
    return best;
}

inline std::string subset_name(std::uint32_t mask) {
    std::string name = "z_p";
    bool first = true;
    for (std::size_t i = 0; mask >> i; ++i) {
        if (mask & (1u << i)) {
            if (!first) name += "_";
            name += std::to_string(i + 1);
            first = false;
        }
    }
    return name;
}

}  // namespace detail

// Compact formulation data: binaries z_{n,k} assign point n to cluster k,
// s_{n,k} >= 0 carries the squared distance of assigned points, c_k is the
// continuous center of cluster k, and D relaxes the link for unassigned
// points. Coverage is aggregate: at least N - M points (or total budget
// minus M in budget form) must be assigned.
struct CompactModel {
    std::vector<WeightedPoint> points;
    std::size_t dim = 1;
    int k = 1;
    long long m = 0;
    bool budget_form = false;
    double big_m = 0.0;
};

inline CompactModel build_compact_model(const std::vector<WeightedPoint>& points, int k,
                                        long long m, bool budget_form) {
    if (points.empty()) throw parameter_error("instance needs at least one point");
    if (k < 1) throw parameter_error("k must be at least 1");
    if (m < 0) throw parameter_error("m must be nonnegative");
    CompactModel model;
    model.points = points;
    model.dim = points.front().coords.size();
    model.k = k;
    model.m = m;
    model.budget_form = budget_form;
    model.big_m = detail::max_pairwise_sq_distance(points);
    return model;
}

inline std::string render_compact(const CompactModel& model) {
    const std::size_t n = model.points.size();
    const std::size_t dim = model.dim;
    std::string out;
    out += "# pmssc compact model: partial min-sum-of-squares clustering\n";
    out += "# points n=1.." + std::to_string(n) + ", clusters k=1.." + std::to_string(model.k) +
           ", coordinates d=1.." + std::to_string(dim) + "\n";
    out += "# z_n_k = 1 assigns point n to cluster k; s_n_k >= squared distance when assigned;\n";
    out += "# c_k_d is the continuous center of cluster k. D = " +
           detail::fmt_double(model.big_m) + " (max pairwise squared distance).\n";

    out += "OBJECTIVE min\n ";
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 1; k <= model.k; ++k)
            out += " + " + detail::fmt_double(model.points[i].weight) + " s_" +
                   std::to_string(i + 1) + "_" + std::to_string(k);
    out += "\n";

    out += "BINARY\n ";
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 1; k <= model.k; ++k)
            out += " z_" + std::to_string(i + 1) + "_" + std::to_string(k);
    out += "\n";

    out += "CONTINUOUS\n";
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 1; k <= model.k; ++k)
            out += "  s_" + std::to_string(i + 1) + "_" + std::to_string(k) + " >= 0\n";
    for (int k = 1; k <= model.k; ++k)
        for (std::size_t d = 1; d <= dim; ++d)
            out += "  c_" + std::to_string(k) + "_" + std::to_string(d) + " free\n";

    out += "CONSTRAINTS\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += "  assign_" + std::to_string(i + 1) + ":";
        for (int k = 1; k <= model.k; ++k)
            out += " + 1 z_" + std::to_string(i + 1) + "_" + std::to_string(k);
        out += " <= 1\n";
    }
    {
        // Aggregate coverage: unit form sum z >= n - M, budget form
        // sum m_n z_{n,k} >= (sum m_n) - M.
        out += "  cover:";
        long long total_budget = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const long long coeff = model.budget_form ? model.points[i].budget : 1;
            total_budget += coeff;
            for (int k = 1; k <= model.k; ++k)
                out += " + " + std::to_string(coeff) + " z_" + std::to_string(i + 1) + "_" +
                       std::to_string(k);
        }
        out += " >= " + std::to_string(total_budget - model.m) + "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 1; k <= model.k; ++k) {
            // s >= sum_d (c_k_d - x_d)^2 - D (1 - z), expanded:
            // s - sum_d c^2 + sum_d 2 x_d c - D z >= sum_d x_d^2 - D
            out += "  link_" + std::to_string(i + 1) + "_" + std::to_string(k) + ": + 1 s_" +
                   std::to_string(i + 1) + "_" + std::to_string(k);
            double rhs = -model.big_m;
            for (std::size_t d = 1; d <= dim; ++d) {
                const double x = model.points[i].coords[d - 1];
                const std::string c = "c_" + std::to_string(k) + "_" + std::to_string(d);
                out += " - 1 " + c + "^2 + " + detail::fmt_double(2.0 * x) + " " + c;
                rhs += x * x;
            }
            out += " - " + detail::fmt_double(model.big_m) + " z_" + std::to_string(i + 1) +
                   "_" + std::to_string(k) + " >= " + detail::fmt_double(rhs) + "\n";
        }
    }
    return out;
}

inline std::string export_compact(const std::vector<WeightedPoint>& points, int k, long long m,
                                  bool budget_form = false) {
    return render_compact(build_compact_model(points, k, m, budget_form));
}

// Extended (set-partitioning) formulation: one binary per nonempty subset with
// its precomputed clustering cost, one binary y_n per point marking it as an
// outlier, cover inequalities, the outlier budget, and the cluster-count cap.
struct ExtendedModel {
    std::size_t n = 0;
    int k = 1;
    long long m = 0;
    bool budget_form = false;
    std::vector<long long> budgets;
    std::vector<double> subset_cost;  // index mask - 1, all 2^n - 1 nonempty subsets
};

inline ExtendedModel build_extended_model(const std::vector<WeightedPoint>& points, int k,
                                          long long m, bool budget_form) {
    if (points.empty()) throw parameter_error("instance needs at least one point");
    if (k < 1) throw parameter_error("k must be at least 1");
    if (m < 0) throw parameter_error("m must be nonnegative");
    if (points.size() > 14)
        throw guard_error("extended model enumerates 2^n subsets; n is capped at 14");
    ExtendedModel model;
    model.n = points.size();
    model.k = k;
    model.m = m;
    model.budget_form = budget_form;
    for (const auto& p : points) model.budgets.push_back(budget_form ? p.budget : 1);
    model.subset_cost = detail::subset_costs(points, CostKind::centroid).cost;
    return model;
}

inline std::string render_extended(const ExtendedModel& model) {
    const std::size_t n = model.n;
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    std::string out;
    out += "# pmssc extended (set-partitioning) model\n";
    out += "# z_p = 1 selects point subset p as a cluster (cost precomputed below);\n";
    out += "# y_n = 1 marks point n as an uncovered outlier.\n";
    out += "# Column generation notes: relaxing integrality, the restricted master over a\n";
    out += "# subset of columns has duals pi_n (cover_n), lambda (outlier_budget) and sigma\n";
    out += "# (cluster_count). A column p prices in when c_p - sum_{n in p} pi_n < -sigma;\n";
    out += "# the pricing subproblem min_p [c_p - sum_n pi_n z_n] is a convex QP via\n";
    out += "# s_n >= d(x_n, c)^2 - D (1 - z_n), as in the compact model's link rows.\n";

    out += "OBJECTIVE min\n";
    for (std::uint32_t mask = 1; mask <= full; ++mask)
        out += "  + " + detail::fmt_double(model.subset_cost[mask - 1]) + " " +
               detail::subset_name(mask) + "\n";

    out += "BINARY\n ";
    for (std::uint32_t mask = 1; mask <= full; ++mask) out += " " + detail::subset_name(mask);
    for (std::size_t i = 1; i <= n; ++i) out += " y_" + std::to_string(i);
    out += "\n";

    out += "SUBSETS\n";
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        out += "  " + detail::subset_name(mask) + ": members";
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) out += " " + std::to_string(i + 1);
        out += " cost " + detail::fmt_double(model.subset_cost[mask - 1]) + "\n";
    }

    out += "CONSTRAINTS\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += "  cover_" + std::to_string(i + 1) + ": + 1 y_" + std::to_string(i + 1);
        for (std::uint32_t mask = 1; mask <= full; ++mask)
            if (mask & (1u << i)) out += " + 1 " + detail::subset_name(mask);
        out += " >= 1\n";
    }
    out += "  outlier_budget:";
    for (std::size_t i = 0; i < n; ++i)
        out += " + " + std::to_string(model.budgets[i]) + " y_" + std::to_string(i + 1);
    out += " <= " + std::to_string(model.m) + "\n";
    out += "  cluster_count:";
    for (std::uint32_t mask = 1; mask <= full; ++mask)
        out += " + 1 " + detail::subset_name(mask);
    out += " <= " + std::to_string(model.k) + "\n";
    return out;
}

inline std::string export_extended(const std::vector<WeightedPoint>& points, int k, long long m,
                                   bool budget_form = false) {
    return render_extended(build_extended_model(points, k, m, budget_form));
}

struct ExtendedEvaluation {
    bool feasible = false;
    double objective = 0.0;
    std::string violation;  // empty when feasible
};

// Check one binary assignment (chosen subset masks, y flags) against the
// cover, budget and cluster-count constraints and price the objective.
inline ExtendedEvaluation evaluate_extended(const ExtendedModel& model,
                                            const std::vector<std::uint32_t>& subsets,
                                            const std::vector<int>& y) {
    if (y.size() != model.n) throw domain_error("y assignment has the wrong length");
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << model.n) - 1);
    ExtendedEvaluation eval;
    std::uint32_t covered = 0;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        if (subsets[s] == 0 || subsets[s] > full)
            throw domain_error("subset mask out of range");
        for (std::size_t t = s + 1; t < subsets.size(); ++t)
            if (subsets[t] == subsets[s])
                throw domain_error("subset variable selected twice");
        covered |= subsets[s];
        eval.objective += model.subset_cost[subsets[s] - 1];
    }
    for (int flag : y)
        if (flag != 0 && flag != 1) throw domain_error("y entries must be 0 or 1");

    long long spent = 0;
    for (std::size_t i = 0; i < model.n; ++i) {
        if (y[i]) spent += model.budgets[i];
        if (!y[i] && !(covered & (1u << i))) {
            eval.violation = "point " + std::to_string(i + 1) + " neither covered nor outlier";
            return eval;
        }
    }
    if (spent > model.m) {
        eval.violation = "outlier budget exceeded";
        return eval;
    }
    if (static_cast<long long>(subsets.size()) > model.k) {
        eval.violation = "too many clusters selected";
        return eval;
    }
    eval.feasible = true;
    return eval;
}

struct ExtendedOptimum {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> subsets;
    std::vector<int> y;
};

// Exhaustive minimization over the model's feasible assignments: every
// budget-feasible outlier choice, then every partition of the survivors into
// at most k subsets. Nonnegative costs make overlapping covers dominated, so
// this set contains an optimal assignment of the full program. The winner is
// re-checked through evaluate_extended.
inline ExtendedOptimum minimize_extended(const ExtendedModel& model) {
    const std::size_t n = model.n;
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    ExtendedOptimum best;
    std::vector<std::size_t> survivors;
    std::vector<std::uint32_t> blocks;
    for (std::uint32_t out = 0; out <= full; ++out) {
        long long spent = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (out & (1u << i)) spent += model.budgets[i];
        if (spent > model.m) continue;
        survivors.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (!(out & (1u << i))) survivors.push_back(i);
        detail::for_each_partition(
            survivors.size(), static_cast<std::size_t>(model.k),
            [&](const std::vector<std::size_t>& labels, std::size_t nblocks) {
                blocks.assign(nblocks, 0);
                for (std::size_t s = 0; s < labels.size(); ++s)
                    blocks[labels[s]] |= (1u << static_cast<std::uint32_t>(survivors[s]));
                double cost = 0.0;
                for (std::uint32_t bm : blocks) cost += model.subset_cost[bm - 1];
                if (cost < best.cost) {
                    best.cost = cost;
                    best.subsets.assign(blocks.begin(), blocks.end());
                    best.y.assign(n, 0);
                    for (std::size_t i = 0; i < n; ++i)
                        if (out & (1u << i)) best.y[i] = 1;
                }
            });
    }
    const ExtendedEvaluation check = evaluate_extended(model, best.subsets, best.y);
    if (!check.feasible || check.objective != best.cost)
        throw internal_error("extended minimizer produced an infeasible assignment");
    return best;
}

}  // namespace pmssc
