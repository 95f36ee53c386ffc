#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "pmssc/oracle.hpp"
#include "support/test_util.hpp"

using namespace pmssc;
using Catch::Matchers::WithinRel;

namespace {

// Stirling numbers of the second kind, summed over 1..max_blocks.
std::uint64_t stirling_sum(std::size_t n, std::size_t max_blocks) {
    std::vector<std::vector<std::uint64_t>> s(n + 1,
                                              std::vector<std::uint64_t>(max_blocks + 1, 0));
    s[0][0] = 1;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= max_blocks; ++j)
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    std::uint64_t total = 0;
    for (std::size_t j = 1; j <= max_blocks; ++j) total += s[n][j];
    return total;
}

}  // namespace

TEST_CASE("partition enumeration counts match Stirling sums") {
    for (std::size_t n = 1; n <= 9; ++n)
        for (std::size_t k = 1; k <= 4; ++k)
            CHECK(count_partitions(n, k) == stirling_sum(n, k));
}

TEST_CASE("brute force basics") {
    SECTION("single point") {
        const Solution sol = brute_force(testutil::make_points({5}), 1, 0);
        CHECK(sol.total_cost == 0.0);
        REQUIRE(sol.clusters.size() == 1);
    }
    SECTION("four points, one outlier") {
        const Solution sol = brute_force(testutil::make_points({0, 1, 2, 10}), 1, 1);
        CHECK_THAT(sol.total_cost, WithinRel(2.0, 1e-12));
        CHECK(sol.outliers == std::vector<std::size_t>{3});
    }
    SECTION("guard rejects large instances") {
        std::vector<double> xs(15);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
        CHECK_THROWS_AS(brute_force(testutil::make_points(xs), 2, 1), guard_error);
    }
    SECTION("weighted five-point instance: the light endpoint goes, not the interior") {
        const std::vector<double> xs{1, 2, 3, 100, 101};
        const std::vector<double> ws{10, 1000, 1, 100, 1};
        const Solution sol = brute_force(testutil::make_points(xs, ws), 2, 1);
        CHECK_THAT(sol.total_cost, WithinRel(1000.0 / 1001.0 + 100.0 / 101.0, 1e-12));
        CHECK(sol.outliers == std::vector<std::size_t>{0});
        REQUIRE(sol.clusters.size() == 2);
        CHECK(sol.clusters[0].members == std::vector<std::size_t>{1, 2});
        CHECK(sol.clusters[1].members == std::vector<std::size_t>{3, 4});
    }
    SECTION("budget filter") {
        OracleConfig config;
        config.budget_mode = true;
        const Solution sol =
            brute_force(testutil::make_points({0, 1, 2, 10}, {}, {1, 1, 1, 5}), 1, 1, config);
        CHECK_THAT(sol.total_cost, WithinRel(146.0 / 3.0, 1e-12));
        CHECK(sol.outliers == std::vector<std::size_t>{0});
    }
    SECTION("multi-dimensional points") {
        std::vector<WeightedPoint> pts{{{0, 0}, 1, 1}, {{1, 0}, 1, 1}, {{0, 1}, 1, 1},
                                       {{50, 50}, 1, 1}};
        const Solution sol = brute_force(pts, 1, 1);
        CHECK(sol.outliers == std::vector<std::size_t>{3});
        CHECK_THAT(sol.total_cost, WithinRel(4.0 / 3.0, 1e-9));
    }
}

TEST_CASE("enumerate_optima") {
    SECTION("symmetric pair has two optima") {
        const std::vector<Solution> optima =
            enumerate_optima(testutil::make_points({-1, 1}), 1, 1, {}, 1e-9);
        REQUIRE(optima.size() == 2);
        CHECK(optima[0].outliers == std::vector<std::size_t>{0});
        CHECK(optima[1].outliers == std::vector<std::size_t>{1});
    }
    SECTION("four tied optima on {0,1,2,10} with k=2, m=1") {
        const std::vector<Solution> optima =
            enumerate_optima(testutil::make_points({0, 1, 2, 10}), 2, 1, {}, 1e-9);
        REQUIRE(optima.size() == 4);
        for (const Solution& sol : optima) CHECK(rel_close(sol.total_cost, 0.5, 1e-12));
    }
    SECTION("a unique optimum yields a singleton set") {
        const std::vector<Solution> optima =
            enumerate_optima(testutil::make_points({0, 1, 9}), 1, 1, {}, 1e-9);
        REQUIRE(optima.size() == 1);
        CHECK(optima[0].outliers == std::vector<std::size_t>{2});
    }
}

TEST_CASE("unit-weight 1D optima are interval clusterings with holes") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        testutil::InstanceOptions opt;
        opt.max_n = 9;
        auto pts = testutil::random_points(rng, opt);
        std::sort(pts.begin(), pts.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
            return a.coords[0] < b.coords[0];
        });
        const auto [k, m] = testutil::random_plain_km(rng, pts.size());
        const Solution sol = brute_force(pts, k, m);
        const Instance1D inst = validate_and_sort(pts, k, m, true);
        testutil::check_interval_structure(inst, sol, k, m);
    }
}

TEST_CASE("weighted 1D optima cluster survivors into intervals") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        testutil::InstanceOptions opt;
        opt.max_n = 8;
        opt.weighted = true;
        auto pts = testutil::random_points(rng, opt);
        std::sort(pts.begin(), pts.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
            return a.coords[0] < b.coords[0];
        });
        const auto [k, m] = testutil::random_plain_km(rng, pts.size());
        const Solution sol = brute_force(pts, k, m);

        // Restricted to the survivors, clusters occupy contiguous survivor runs.
        std::vector<std::size_t> owner(pts.size(), SIZE_MAX);
        for (std::size_t c = 0; c < sol.clusters.size(); ++c)
            for (std::size_t idx : sol.clusters[c].members) owner[idx] = c;
        std::vector<std::size_t> survivor_owner;
        for (std::size_t idx = 0; idx < pts.size(); ++idx)
            if (owner[idx] != SIZE_MAX) survivor_owner.push_back(owner[idx]);
        std::set<std::size_t> closed;
        for (std::size_t s = 0; s < survivor_owner.size(); ++s) {
            if (s > 0 && survivor_owner[s] != survivor_owner[s - 1])
                REQUIRE(closed.insert(survivor_owner[s - 1]).second);
            REQUIRE(!closed.contains(survivor_owner[s]));
        }
    }
}
