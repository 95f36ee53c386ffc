// pmssc: batch solver front end. Reads a CSV of weighted points, dispatches to
// the requested solver, and writes a JSON result document (or a model file for
// the export modes). Exit codes: 0 success, 2 parameter error, 3 parse error,
// 4 enumeration guard, 1 anything else.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmssc/core.hpp"
#include "pmssc/csv.hpp"
#include "pmssc/dp_solver.hpp"
#include "pmssc/heuristics.hpp"
#include "pmssc/model_export.hpp"
#include "pmssc/oracle.hpp"
#include "pmssc/report.hpp"
#include "pmssc/special_cases.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

pmssc::ProjectionSpec parse_projection(const std::string& text) {
    pmssc::ProjectionSpec spec;
    if (text == "pca") {
        spec.method = pmssc::ProjectionMethod::principal_component;
        return spec;
    }
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (head == "coordinate") {
            spec.method = pmssc::ProjectionMethod::coordinate;
            const unsigned long axis = std::stoul(tail);
            if (axis == 0) throw std::invalid_argument("axis");
            spec.axis = axis - 1;  // CLI axes are 1-based, matching x1..xL
            return spec;
        }
        if (head == "random") {
            spec.method = pmssc::ProjectionMethod::random_direction;
            spec.seed = std::stoull(tail);
            return spec;
        }
    } catch (const std::exception&) {
        throw pmssc::parameter_error("bad --projection value '" + text + "'");
    }
    throw pmssc::parameter_error(
        "--projection must be coordinate:IDX, random:SEED or pca");
}

void write_output(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw pmssc::error("cannot write '" + output_path + "'");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Exact and heuristic solvers for k-means with at most M discarded outliers"};
    app.get_formatter()->column_width(34);

    std::string input_path, mode, projection, output_path;
    int k = 1;
    long long m = 0;
    bool table = false, crosscheck = false;

    app.add_option("--input", input_path, "CSV with columns x1..xL[,weight][,budget]")
        ->required();
    app.add_option("--k", k, "maximum number of clusters")->required();
    app.add_option("--m", m, "outlier budget")->required();
    app.add_option("--mode", mode,
                   "exact1d|budget|medoids|heuristic-weighted|k1|project|oracle|"
                   "export-compact|export-extended")
        ->required();
    app.add_option("--projection", projection, "coordinate:IDX|random:SEED|pca (project mode)");
    app.add_flag("--table", table, "include the trade-off table O(N,K,m) for m=0..M");
    app.add_flag("--crosscheck", crosscheck, "compare against the brute-force oracle (N <= 14)");
    app.add_option("--output", output_path, "write the result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const Clock::time_point t_start = Clock::now();
    const pmssc::CsvData data = pmssc::ingest_csv_file(input_path);
    const std::size_t n = data.points.size();

    if (mode == "export-compact" || mode == "export-extended") {
        const bool budget_form =
            std::any_of(data.points.begin(), data.points.end(),
                        [](const pmssc::WeightedPoint& p) { return p.budget != 1; });
        const std::string text = mode == "export-compact"
                                     ? pmssc::export_compact(data.points, k, m, budget_form)
                                     : pmssc::export_extended(data.points, k, m, budget_form);
        write_output(text, output_path);
        return 0;
    }

    const bool unit_weights =
        std::all_of(data.points.begin(), data.points.end(),
                    [](const pmssc::WeightedPoint& p) { return p.weight == 1.0; });

    std::optional<std::vector<double>> tradeoff;
    pmssc::Solution solution;
    Clock::time_point t_solve = Clock::now();

    if (mode == "exact1d" || mode == "medoids" || mode == "heuristic-weighted" ||
        mode == "budget") {
        const bool budget_mode = mode == "budget";
        const pmssc::Instance1D inst =
            pmssc::validate_and_sort(data.points, k, m, !budget_mode);
        t_solve = Clock::now();
        pmssc::SolveResult res = [&] {
            if (mode == "exact1d") return pmssc::solve_unweighted(inst, k, m);
            if (mode == "medoids") return pmssc::solve_medoids(inst, k, m);
            if (mode == "budget") return pmssc::solve_budgeted(inst, k, m);
            return pmssc::solve_weighted_heuristic(inst, k, m);
        }();
        solution = std::move(res.solution);
        if (table) {
            tradeoff.emplace();
            for (long long b = 0; b <= m; ++b)
                tradeoff->push_back(b <= res.matrix.budget()
                                        ? res.matrix.value(n, res.matrix.clusters(), b)
                                        : 0.0);
        }
    } else if (mode == "k1") {
        if (k != 1) throw pmssc::parameter_error("mode k1 needs --k 1");
        if (table) throw pmssc::parameter_error("--table needs a dp mode");
        const pmssc::Instance1D inst = pmssc::validate_and_sort(data.points, k, m, true);
        t_solve = Clock::now();
        if (unit_weights)
            solution = pmssc::solve_k1_unweighted(inst, m);
        else if (m == 1)
            solution = pmssc::solve_k1_weighted_m1(inst);
        else
            throw pmssc::parameter_error("weighted k1 solving needs --m 1");
    } else if (mode == "project") {
        if (projection.empty())
            throw pmssc::parameter_error("mode project needs an explicit --projection");
        if (table) throw pmssc::parameter_error("--table needs a dp mode");
        const pmssc::ProjectionSpec spec = parse_projection(projection);
        const pmssc::ProjectedSolver solver = unit_weights
                                                  ? pmssc::ProjectedSolver::exact_1d
                                                  : pmssc::ProjectedSolver::heuristic_weighted;
        t_solve = Clock::now();
        solution = pmssc::solve_projected(data.points, k, m, spec, solver);
    } else if (mode == "oracle") {
        if (table) throw pmssc::parameter_error("--table needs a dp mode");
        pmssc::OracleConfig config;
        config.budget_mode = std::any_of(data.points.begin(), data.points.end(),
                                         [](const pmssc::WeightedPoint& p) {
                                             return p.budget != 1;
                                         });
        t_solve = Clock::now();
        solution = pmssc::brute_force(data.points, k, m, config);
    } else {
        throw pmssc::parameter_error("unknown mode '" + mode + "'");
    }
    const double solve_ms = ms_since(t_solve);

    std::optional<pmssc::CrosscheckReport> check;
    if (crosscheck && n <= 14) {
        pmssc::OracleConfig config;
        config.cost_kind =
            mode == "medoids" ? pmssc::CostKind::medoid : pmssc::CostKind::centroid;
        config.budget_mode = mode == "budget";
        const pmssc::Solution oracle = pmssc::brute_force(data.points, k, m, config);
        check = pmssc::CrosscheckReport{
            oracle.total_cost, pmssc::rel_close(solution.total_cost, oracle.total_cost, 1e-6)};
    }

    pmssc::Timings timings{ms_since(t_start), solve_ms};
    const nlohmann::ordered_json doc = pmssc::run_report(solution, k, m, tradeoff, check, timings);
    write_output(doc.dump(2), output_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pmssc::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pmssc::guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const pmssc::parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pmssc::dimension_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pmssc::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
