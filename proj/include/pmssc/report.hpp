#pragma once

// JSON result documents for the CLI. Indices are 1-based and refer to the
// original input row order; key order is fixed so output is deterministic
// for a given input and configuration (timings aside).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmssc/core.hpp"

namespace pmssc {

struct CrosscheckReport {
    double oracle_cost = 0.0;
    bool match = false;
};

struct Timings {
    double total_ms = 0.0;
    double solve_ms = 0.0;
};

inline nlohmann::ordered_json solution_to_json(const Solution& sol) {
    nlohmann::ordered_json doc;
    doc["total_cost"] = sol.total_cost;
    doc["clusters"] = nlohmann::ordered_json::array();
    for (const SolutionCluster& cluster : sol.clusters) {
        nlohmann::ordered_json c;
        c["members"] = nlohmann::ordered_json::array();
        for (std::size_t idx : cluster.members) c["members"].push_back(idx + 1);
        c["center"] = cluster.center;
        c["cost"] = cluster.cost;
        if (cluster.inner_outlier) c["inner_outlier"] = *cluster.inner_outlier + 1;
        doc["clusters"].push_back(std::move(c));
    }
    doc["outliers"] = nlohmann::ordered_json::array();
    for (std::size_t idx : sol.outliers) doc["outliers"].push_back(idx + 1);
    if (!sol.notes.empty()) doc["notes"] = sol.notes;
    return doc;
}

inline nlohmann::ordered_json run_report(const Solution& sol, int k, long long m,
                                         const std::optional<std::vector<double>>& tradeoff,
                                         const std::optional<CrosscheckReport>& crosscheck,
                                         const Timings& timings) {
    nlohmann::ordered_json doc;
    doc["mode"] = to_string(sol.mode);
    doc["k"] = k;
    doc["m"] = m;
    const nlohmann::ordered_json body = solution_to_json(sol);
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    if (tradeoff) doc["tradeoff_table"] = *tradeoff;
    if (crosscheck) {
        doc["crosscheck"] = {{"oracle_cost", crosscheck->oracle_cost},
                             {"match", crosscheck->match}};
    }
    doc["timings"] = {{"total_ms", timings.total_ms}, {"solve_ms", timings.solve_ms}};
    return doc;
}

}  // namespace pmssc
