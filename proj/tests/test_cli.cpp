#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pmssc/csv.hpp"
#include "support/test_util.hpp"

using namespace pmssc;
using nlohmann::json;

namespace {

struct RunOutcome {
    int exit_code = -1;
    std::string output;
};

RunOutcome run_cli(const std::string& args) {
    const std::string cmd = std::string(PMSSC_CLI_PATH) + " " + args + " 2>&1";
    RunOutcome out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.output.append(buf.data(), got);
    const int status = pclose(pipe);
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::filesystem::path write_temp_csv(const std::string& name, const std::string& content) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

json strip_timings(json doc) {
    doc.erase("timings");
    return doc;
}

}  // namespace

TEST_CASE("csv ingestion") {
    SECTION("minimal single column") {
        std::stringstream in("x1\n0\n1\n2\n10\n");
        const CsvData data = ingest_csv(in);
        REQUIRE(data.points.size() == 4);
        CHECK(data.dim == 1);
        CHECK(data.points[3].coords[0] == 10.0);
        CHECK(data.points[0].weight == 1.0);
        CHECK(data.points[0].budget == 1);
    }
    SECTION("weights column") {
        std::stringstream in("x1,weight\n1,10\n2,1000\n3,1\n100,100\n101,1\n");
        const CsvData data = ingest_csv(in);
        REQUIRE(data.points.size() == 5);
        CHECK(data.points[1].weight == 1000.0);
    }
    SECTION("two coordinates") {
        std::stringstream in("x1,x2\n0,0\n1,1\n");
        const CsvData data = ingest_csv(in);
        CHECK(data.dim == 2);
        CHECK(data.points[1].coords == std::vector<double>{1.0, 1.0});
    }
    SECTION("budget column must hold integers") {
        std::stringstream in("x1,budget\n1,2\n2,1.5\n");
        try {
            ingest_csv(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 3);
        }
    }
    SECTION("nonpositive weight is rejected with its line") {
        std::stringstream in("x1,weight\n1,2\n2,0\n");
        try {
            ingest_csv(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 3);
        }
    }
    SECTION("missing coordinate column") {
        std::stringstream in("x2\n1\n");
        CHECK_THROWS_AS(ingest_csv(in), parse_error);
    }
    SECTION("unknown column") {
        std::stringstream in("x1,wieght\n1,2\n");
        CHECK_THROWS_AS(ingest_csv(in), parse_error);
    }
    SECTION("non-numeric cell") {
        std::stringstream in("x1\n1\nabc\n");
        try {
            ingest_csv(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 3);
        }
    }
    SECTION("short row") {
        std::stringstream in("x1,weight\n1\n");
        CHECK_THROWS_AS(ingest_csv(in), parse_error);
    }
}

TEST_CASE("cli end to end") {
    const auto quad = write_temp_csv("pmssc_quad.csv", "x1\n0\n1\n2\n10\n");
    const auto weighted5 = write_temp_csv(
        "pmssc_w5.csv", "x1,weight\n1,10\n2,1000\n3,1\n100,100\n101,1\n");

    SECTION("exact solve with trade-off table") {
        const RunOutcome out = run_cli("--input " + quad.string() +
                                       " --k 1 --m 1 --mode exact1d --table --crosscheck");
        REQUIRE(out.exit_code == 0);
        const json doc = json::parse(out.output);
        CHECK(doc["mode"] == "exact-1d");
        CHECK(doc["total_cost"].get<double>() == 2.0);
        CHECK(doc["outliers"] == json::array({4}));
        CHECK(doc["clusters"][0]["members"] == json::array({1, 2, 3}));
        REQUIRE(doc["tradeoff_table"].size() == 2);
        CHECK(rel_close(doc["tradeoff_table"][0].get<double>(), 62.75, 1e-12));
        CHECK(rel_close(doc["tradeoff_table"][1].get<double>(), 2.0, 1e-12));
        CHECK(doc["crosscheck"]["match"] == true);
    }
    SECTION("oracle mode on the weighted instance") {
        const RunOutcome out =
            run_cli("--input " + weighted5.string() + " --k 2 --m 1 --mode oracle");
        REQUIRE(out.exit_code == 0);
        const json doc = json::parse(out.output);
        CHECK(doc["mode"] == "oracle");
        CHECK(doc["outliers"] == json::array({1}));
        CHECK(doc["clusters"][0]["members"] == json::array({2, 3}));
        CHECK(doc["clusters"][1]["members"] == json::array({4, 5}));
    }
    SECTION("heuristic-weighted crosschecks against the oracle here") {
        const RunOutcome out = run_cli("--input " + weighted5.string() +
                                       " --k 2 --m 1 --mode heuristic-weighted --crosscheck");
        REQUIRE(out.exit_code == 0);
        const json doc = json::parse(out.output);
        CHECK(doc["mode"] == "heuristic-weighted");
        CHECK(doc["crosscheck"]["match"] == true);
    }
    SECTION("exact modes match the oracle under --crosscheck") {
        for (const std::string mode : {"exact1d", "medoids", "budget", "k1"}) {
            const std::string k = mode == "k1" ? "1" : "2";
            const RunOutcome out = run_cli("--input " + quad.string() + " --k " + k +
                                           " --m 1 --mode " + mode + " --crosscheck");
            REQUIRE(out.exit_code == 0);
            const json doc = json::parse(out.output);
            INFO(mode);
            CHECK(doc["crosscheck"]["match"] == true);
        }
    }
    SECTION("budget columns drive budget mode") {
        const auto bud = write_temp_csv("pmssc_bud.csv",
                                        "x1,weight,budget\n0,1,1\n1,2,1\n2,1,2\n50,5,3\n");
        const RunOutcome out = run_cli("--input " + bud.string() +
                                       " --k 1 --m 2 --mode budget --crosscheck");
        REQUIRE(out.exit_code == 0);
        const json doc = json::parse(out.output);
        CHECK(doc["mode"] == "budget-1d");
        CHECK(doc["outliers"] == json::array({1, 2}));
        CHECK(rel_close(doc["total_cost"].get<double>(), 1920.0, 1e-12));
        CHECK(doc["crosscheck"]["match"] == true);
    }
    SECTION("weighted input is rejected by the unweighted solver") {
        const RunOutcome out =
            run_cli("--input " + weighted5.string() + " --k 2 --m 1 --mode exact1d");
        CHECK(out.exit_code == 2);
        CHECK(out.output.find("error:") != std::string::npos);
    }
    SECTION("export guard trips at n=20") {
        std::string csv = "x1\n";
        for (int i = 0; i < 20; ++i) csv += std::to_string(i) + "\n";
        const auto big = write_temp_csv("pmssc_big.csv", csv);
        const RunOutcome out =
            run_cli("--input " + big.string() + " --k 2 --m 1 --mode export-extended");
        CHECK(out.exit_code == 4);
    }
    SECTION("export modes emit the model text") {
        const RunOutcome out =
            run_cli("--input " + quad.string() + " --k 2 --m 1 --mode export-compact");
        REQUIRE(out.exit_code == 0);
        CHECK(out.output.find("OBJECTIVE min") != std::string::npos);
        CHECK(out.output.find("cover:") != std::string::npos);

        const auto model_path = std::filesystem::temp_directory_path() / "pmssc_model.txt";
        const RunOutcome file_out =
            run_cli("--input " + quad.string() + " --k 2 --m 1 --mode export-extended --output " +
                    model_path.string());
        REQUIRE(file_out.exit_code == 0);
        std::ifstream model_in(model_path);
        std::stringstream model_text;
        model_text << model_in.rdbuf();
        CHECK(model_text.str().find("SUBSETS") != std::string::npos);
        CHECK(model_text.str().find("cluster_count:") != std::string::npos);
    }
    SECTION("project mode needs an explicit projection") {
        const auto grid = write_temp_csv("pmssc_grid.csv", "x1,x2\n0,0\n1,1\n2,2\n9,9\n");
        const RunOutcome missing =
            run_cli("--input " + grid.string() + " --k 1 --m 1 --mode project");
        CHECK(missing.exit_code == 2);
        const RunOutcome ok = run_cli("--input " + grid.string() +
                                      " --k 1 --m 1 --mode project --projection pca");
        REQUIRE(ok.exit_code == 0);
        const json doc = json::parse(ok.output);
        CHECK(doc["mode"] == "projected");
        CHECK(doc["outliers"] == json::array({4}));
    }
    SECTION("1D-only modes refuse planar input, the oracle accepts it") {
        const auto grid = write_temp_csv("pmssc_grid2.csv", "x1,x2\n0,0\n1,1\n2,2\n9,9\n");
        const RunOutcome bad = run_cli("--input " + grid.string() + " --k 1 --m 0 --mode exact1d");
        CHECK(bad.exit_code == 2);
        const RunOutcome oracle =
            run_cli("--input " + grid.string() + " --k 1 --m 1 --mode oracle");
        REQUIRE(oracle.exit_code == 0);
        const json doc = json::parse(oracle.output);
        CHECK(doc["outliers"] == json::array({4}));
        CHECK(doc["total_cost"].get<double>() == 4.0);
    }
    SECTION("projection needs at least two coordinates") {
        const RunOutcome out = run_cli("--input " + quad.string() +
                                       " --k 1 --m 1 --mode project --projection pca");
        CHECK(out.exit_code == 2);
    }
    SECTION("missing file is a parse failure") {
        const RunOutcome out = run_cli("--input /nonexistent.csv --k 1 --m 0 --mode exact1d");
        CHECK(out.exit_code == 3);
    }
    SECTION("bad flags are parameter errors") {
        const RunOutcome out = run_cli("--k 1 --m 0 --mode exact1d");
        CHECK(out.exit_code == 2);
    }
    SECTION("row permutation changes indices, not the clustered values") {
        const auto a = write_temp_csv("pmssc_perm_a.csv", "x1\n0\n1\n2\n10\n");
        const auto b = write_temp_csv("pmssc_perm_b.csv", "x1\n10\n2\n0\n1\n");
        const json doc_a = json::parse(
            run_cli("--input " + a.string() + " --k 1 --m 1 --mode exact1d").output);
        const json doc_b = json::parse(
            run_cli("--input " + b.string() + " --k 1 --m 1 --mode exact1d").output);
        CHECK(doc_a["total_cost"] == doc_b["total_cost"]);
        CHECK(doc_a["outliers"] == json::array({4}));
        CHECK(doc_b["outliers"] == json::array({1}));
        CHECK(doc_a["clusters"][0]["members"] == json::array({1, 2, 3}));
        CHECK(doc_b["clusters"][0]["members"] == json::array({2, 3, 4}));
    }
    SECTION("model exports are byte-identical across runs") {
        const std::string args =
            "--input " + weighted5.string() + " --k 2 --m 1 --mode export-extended";
        const RunOutcome first = run_cli(args);
        const RunOutcome second = run_cli(args);
        REQUIRE(first.exit_code == 0);
        CHECK(first.output == second.output);
    }
    SECTION("output is deterministic apart from timings") {
        const std::string args = "--input " + weighted5.string() +
                                 " --k 2 --m 1 --mode heuristic-weighted --table --crosscheck";
        const json first = strip_timings(json::parse(run_cli(args).output));
        const json second = strip_timings(json::parse(run_cli(args).output));
        CHECK(first == second);
    }
}
