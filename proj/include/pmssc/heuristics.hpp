#pragma once

// Dimensionality-reduction heuristic: project multi-dimensional data onto a
// line, solve the 1D problem exactly (or heuristically for weighted data),
// keep the memberships, and recost everything in the original space.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pmssc/core.hpp"
#include "pmssc/dp_solver.hpp"
#include "pmssc/errors.hpp"

namespace pmssc {

enum class ProjectionMethod { coordinate, random_direction, principal_component };

struct ProjectionSpec {
    ProjectionMethod method = ProjectionMethod::principal_component;
    std::size_t axis = 0;        // coordinate method
    std::uint64_t seed = 0;      // random_direction method
    int power_iterations = 100;
    double power_tolerance = 1e-10;
};

struct ProjectResult {
    Instance1D instance;
    std::vector<double> direction;  // unit norm
    bool pca_fallback = false;      // zero-variance data fell back to coordinate 0
};

enum class ProjectedSolver { exact_1d, medoid_1d, heuristic_weighted };

namespace detail {

inline std::vector<double> normalized(std::vector<double> v) {
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw domain_error("direction must be nonzero");
    for (double& c : v) c /= norm;
    return v;
}

// Deterministic standard normal via Box-Muller on the standardized mt19937_64
// stream; std::normal_distribution varies across library implementations.
class NormalDeviates {
public:
    explicit NormalDeviates(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform01() {
        // in (0, 1]: avoids log(0)
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct PcaResult {
    std::vector<double> direction;
    bool fallback = false;
};

// Leading eigenvector of the weighted covariance by power iteration; the sign
// is fixed so the first nonzero component is positive.
inline PcaResult principal_direction(const std::vector<WeightedPoint>& points,
                                     const ProjectionSpec& spec) {
    const std::size_t dim = points.front().coords.size();
    double total_weight = 0.0;
    std::vector<double> mean(dim, 0.0);
    for (const auto& p : points) {
        total_weight += p.weight;
        for (std::size_t d = 0; d < dim; ++d) mean[d] += p.weight * p.coords[d];
    }
    for (double& c : mean) c /= total_weight;

    std::vector<double> cov(dim * dim, 0.0);
    for (const auto& p : points) {
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                cov[a * dim + b] +=
                    p.weight * (p.coords[a] - mean[a]) * (p.coords[b] - mean[b]);
    }
    double trace = 0.0;
    for (std::size_t d = 0; d < dim; ++d) trace += cov[d * dim + d];
    if (!(trace > 0.0)) {
        PcaResult res;
        res.direction.assign(dim, 0.0);
        res.direction[0] = 1.0;
        res.fallback = true;
        return res;
    }

    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    std::vector<double> next(dim);
    for (int it = 0; it < spec.power_iterations; ++it) {
        for (std::size_t a = 0; a < dim; ++a) {
            next[a] = 0.0;
            for (std::size_t b = 0; b < dim; ++b) next[a] += cov[a * dim + b] * v[b];
        }
        double norm = 0.0;
        for (double c : next) norm += c * c;
        norm = std::sqrt(norm);
        if (norm == 0.0) break;  // start vector orthogonal to the range; keep v
        double delta = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            next[a] /= norm;
            delta = std::max(delta, std::abs(std::abs(next[a]) - std::abs(v[a])));
        }
        v.swap(next);
        if (delta < spec.power_tolerance) break;
    }
    for (double c : v) {
        if (c != 0.0) {
            if (c < 0.0)
                for (double& e : v) e = -e;
            break;
        }
    }
    return {normalized(std::move(v)), false};
}

}  // namespace detail

// Project L >= 2 points onto a unit direction and build the sorted 1D instance.
// Weights and budgets carry through; the permutation maps back to input order.
inline ProjectResult project(const std::vector<WeightedPoint>& points,
                             const ProjectionSpec& spec, int k = 1, long long m = 0) {
    if (points.empty()) throw parameter_error("instance needs at least one point");
    const std::size_t dim = points.front().coords.size();
    if (dim < 2) throw dimension_error("projection needs at least two coordinates");

    ProjectResult res;
    switch (spec.method) {
        case ProjectionMethod::coordinate: {
            if (spec.axis >= dim) throw parameter_error("projection axis out of range");
            res.direction.assign(dim, 0.0);
            res.direction[spec.axis] = 1.0;
            break;
        }
        case ProjectionMethod::random_direction: {
            detail::NormalDeviates normals(spec.seed);
            std::vector<double> dir(dim);
            double norm = 0.0;
            do {
                for (double& c : dir) c = normals.next();
                norm = 0.0;
                for (double c : dir) norm += c * c;
            } while (norm == 0.0);
            res.direction = detail::normalized(std::move(dir));
            break;
        }
        case ProjectionMethod::principal_component: {
            detail::PcaResult pca = detail::principal_direction(points, spec);
            res.direction = std::move(pca.direction);
            res.pca_fallback = pca.fallback;
            break;
        }
    }

    std::vector<WeightedPoint> flat(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].coords.size() != dim)
            throw dimension_error("points mix coordinate dimensions");
        double dot = 0.0;
        for (std::size_t d = 0; d < dim; ++d) dot += points[i].coords[d] * res.direction[d];
        flat[i] = {{dot}, points[i].weight, points[i].budget};
    }
    // budgets carry through; the chosen 1D solver enforces its own model
    res.instance = validate_and_sort(flat, k, m, false);
    return res;
}

// Solve in the projected space, then lift: memberships come from the 1D
// solution, centers and costs are recomputed with the full coordinates.
inline Solution solve_projected(const std::vector<WeightedPoint>& points, int k, long long m,
                                const ProjectionSpec& spec, ProjectedSolver solver) {
    ProjectResult projected = project(points, spec, k, m);
    Solution flat = [&] {
        switch (solver) {
            case ProjectedSolver::exact_1d:
                return solve_unweighted(projected.instance, k, m).solution;
            case ProjectedSolver::medoid_1d:
                return solve_medoids(projected.instance, k, m).solution;
            case ProjectedSolver::heuristic_weighted:
                return solve_weighted_heuristic(projected.instance, k, m).solution;
        }
        throw parameter_error("unknown projected solver");
    }();

    Solution lifted;
    lifted.mode = SolveMode::projected;
    lifted.outliers = flat.outliers;
    for (const SolutionCluster& fc : flat.clusters) {
        SolutionCluster cluster;
        cluster.members = fc.members;  // original input indices already
        cluster.inner_outlier = fc.inner_outlier;
        std::vector<std::vector<double>> pts;
        std::vector<double> ws;
        for (std::size_t idx : cluster.members) {
            pts.push_back(points[idx].coords);
            ws.push_back(points[idx].weight);
        }
        if (solver == ProjectedSolver::medoid_1d) {
            const MedoidResult med = medoid_cost(pts, ws);
            cluster.center = pts[med.index];
            cluster.cost = med.cost;
        } else {
            CentroidResult cen = centroid_cost(pts, ws);
            cluster.center = std::move(cen.center);
            cluster.cost = cen.cost;
        }
        lifted.total_cost += cluster.cost;
        lifted.clusters.push_back(std::move(cluster));
    }

    switch (spec.method) {
        case ProjectionMethod::coordinate:
            lifted.notes.push_back("projection=coordinate:" + std::to_string(spec.axis + 1));
            break;
        case ProjectionMethod::random_direction:
            lifted.notes.push_back("projection=random:" + std::to_string(spec.seed));
            break;
        case ProjectionMethod::principal_component:
            lifted.notes.push_back(projected.pca_fallback
                                       ? "projection=pca (zero variance; fell back to coordinate:1)"
                                       : "projection=pca");
            break;
    }
    return lifted;
}

}  // namespace pmssc
