#pragma once

// Amortized O(1) incremental cluster-cost computation over sorted 1D points.
//
// A cluster over sorted positions [i, j] is summarized by the triple
//   v = sum of weights, b = weighted centroid, c = weighted cost,
// and the triple of an extended range follows from the previous one:
//   v' = v + w,  b' = (v*b + w*x) / v',  c' = c + w*(x - b')^2 + v*(b' - b)^2.
// The c' relation is exact: re-centering the old points adds v*(b'-b)^2 and
// the new point adds w*(x-b')^2 (the cross term vanishes by centroid choice).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "pmssc/core.hpp"
#include "pmssc/errors.hpp"

namespace pmssc {

struct RunningClusterStats {
    double v = 0.0;  // cumulated weight
    double b = 0.0;  // weighted centroid
    double c = 0.0;  // weighted cluster cost
};

inline RunningClusterStats singleton(double x, double w) {
    if (!(w > 0.0)) throw domain_error("weights must be positive");
    return {w, x, 0.0};
}

inline RunningClusterStats extend_right(const RunningClusterStats& s, double x, double w) {
    RunningClusterStats r;
    r.v = s.v + w;
    r.b = (s.v * s.b + w * x) / r.v;
    r.c = s.c + w * (x - r.b) * (x - r.b) + s.v * (r.b - s.b) * (r.b - s.b);
    return r;
}

inline RunningClusterStats extend_left(const RunningClusterStats& s, double x, double w) {
    RunningClusterStats r;
    r.v = s.v + w;
    r.b = (s.v * s.b + w * x) / r.v;
    r.c = s.c + w * (x - r.b) * (x - r.b) + s.v * (r.b - s.b) * (r.b - s.b);
    return r;
}

// Combine the stats of two disjoint ranges.
inline RunningClusterStats merge(const RunningClusterStats& a, const RunningClusterStats& b) {
    if (a.v == 0.0) return b;
    if (b.v == 0.0) return a;
    RunningClusterStats r;
    r.v = a.v + b.v;
    r.b = (a.v * a.b + b.v * b.b) / r.v;
    r.c = a.c + b.c + a.v * (a.b - r.b) * (a.b - r.b) + b.v * (b.b - r.b) * (b.b - r.b);
    return r;
}

// Prefix costs c[i] = cost of sorted positions [0, i], in one left-to-right pass.
inline std::vector<double> costs_from_left(const Instance1D& inst) {
    const std::size_t n = inst.size();
    std::vector<double> costs(n);
    RunningClusterStats s = singleton(inst.x[0], inst.w[0]);
    costs[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        s = extend_right(s, inst.x[i], inst.w[i]);
        costs[i] = s.c;
    }
    return costs;
}

namespace detail {

inline void check_column_index(const Instance1D& inst, std::size_t j) {
    if (j >= inst.size()) throw domain_error("column index out of range");
}

}  // namespace detail

// Suffix-ending costs out[i] = cost of sorted positions [i, j] for i = 0..j,
// built right-to-left in O(j) time. This is the column the dynamic programs
// consume and then discard at each outer step.
inline void costs_ending_at(const Instance1D& inst, std::size_t j, std::vector<double>& out) {
    detail::check_column_index(inst, j);
    out.resize(j + 1);
    RunningClusterStats s = singleton(inst.x[j], inst.w[j]);
    out[j] = 0.0;
    for (std::size_t i = j; i-- > 0;) {
        s = extend_left(s, inst.x[i], inst.w[i]);
        out[i] = s.c;
    }
}

inline std::vector<double> costs_ending_at(const Instance1D& inst, std::size_t j) {
    std::vector<double> out;
    costs_ending_at(inst, j, out);
    return out;
}

// Discrete-center cost of [lo, hi] via the identity
//   sum w*(x - c)^2 = cluster_cost + v * (c - b)^2,
// so the best member center is the one closest to the centroid b. Ties go to
// the smaller position (and duplicates of the winning value to the first).
struct RangeMedoid {
    std::size_t index = 0;  // sorted position of the medoid
    double cost = 0.0;
};

inline RangeMedoid medoid_of_range(const Instance1D& inst, std::size_t lo, std::size_t hi,
                                   const RunningClusterStats& stats) {
    const auto first = inst.x.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto last = inst.x.begin() + static_cast<std::ptrdiff_t>(hi) + 1;
    auto it = std::lower_bound(first, last, stats.b);
    std::size_t pick;
    if (it == last) {
        pick = hi;
    } else if (it == first) {
        pick = lo;
    } else {
        const double above = *it - stats.b;
        const double below = stats.b - *(it - 1);
        pick = static_cast<std::size_t>((below <= above ? it - 1 : it) - inst.x.begin());
    }
    // Smallest position among duplicates of the chosen value.
    auto dup = std::lower_bound(first, last, inst.x[pick]);
    pick = static_cast<std::size_t>(dup - inst.x.begin());
    const double shift = inst.x[pick] - stats.b;
    return {pick, stats.c + stats.v * shift * shift};
}

inline RangeMedoid medoid_of_range(const Instance1D& inst, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi >= inst.size()) throw domain_error("range out of bounds");
    RunningClusterStats s = singleton(inst.x[hi], inst.w[hi]);
    for (std::size_t i = hi; i-- > lo;) s = extend_left(s, inst.x[i], inst.w[i]);
    return medoid_of_range(inst, lo, hi, s);
}

// Medoid costs of every range [i, j] ending at j, i = 0..j.
inline void medoid_costs_ending_at(const Instance1D& inst, std::size_t j,
                                   std::vector<double>& out) {
    detail::check_column_index(inst, j);
    out.resize(j + 1);
    RunningClusterStats s = singleton(inst.x[j], inst.w[j]);
    out[j] = 0.0;
    for (std::size_t i = j; i-- > 0;) {
        s = extend_left(s, inst.x[i], inst.w[i]);
        out[i] = medoid_of_range(inst, i, j, s).cost;
    }
}

inline std::vector<double> medoid_costs_ending_at(const Instance1D& inst, std::size_t j) {
    std::vector<double> out;
    medoid_costs_ending_at(inst, j, out);
    return out;
}

// Best cost of clustering [lo, hi] with exactly one member discarded. Prefix
// and suffix stats make every removal an O(1) merge, so the whole scan is
// linear in the range. Removal ties go to the smallest position.
struct InnerOutlierResult {
    double cost = 0.0;
    std::size_t dropped = 0;  // sorted position of the discarded point
};

inline InnerOutlierResult one_inner_outlier_cost(const Instance1D& inst, std::size_t lo,
                                                 std::size_t hi) {
    if (hi >= inst.size() || lo > hi) throw domain_error("range out of bounds");
    if (hi == lo) throw domain_error("one-outlier cost needs at least two points");
    const std::size_t len = hi - lo + 1;
    thread_local std::vector<RunningClusterStats> prefix, suffix;
    prefix.resize(len);
    suffix.resize(len);
    prefix[0] = singleton(inst.x[lo], inst.w[lo]);
    for (std::size_t t = 1; t < len; ++t)
        prefix[t] = extend_right(prefix[t - 1], inst.x[lo + t], inst.w[lo + t]);
    suffix[len - 1] = singleton(inst.x[hi], inst.w[hi]);
    for (std::size_t t = len - 1; t-- > 0;)
        suffix[t] = extend_left(suffix[t + 1], inst.x[lo + t], inst.w[lo + t]);

    InnerOutlierResult best{std::numeric_limits<double>::infinity(), lo};
    for (std::size_t t = 0; t < len; ++t) {
        const RunningClusterStats left = t > 0 ? prefix[t - 1] : RunningClusterStats{};
        const RunningClusterStats right = t + 1 < len ? suffix[t + 1] : RunningClusterStats{};
        const double cand = merge(left, right).c;
        if (cand < best.cost) best = {cand, lo + t};
    }
    return best;
}

}  // namespace pmssc
