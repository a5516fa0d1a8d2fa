#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "tft/arrow.hpp"
#include "tft/hypergraph.hpp"

namespace {

std::string cli_path() {
    const char* env = std::getenv("TFT_CLI_BIN");
    return env != nullptr ? env : "tft";
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "/tmp/tft_cli_test_" + std::to_string(counter++) + ".out";
    const std::string command = cli_path() + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    std::remove(out_path.c_str());
    return result;
}

std::string fixture_path() {
    const std::string path = "/tmp/tft_cli_fixture6.json";
    std::ofstream out(path);
    out << R"({"u":2,"n":6,"edges":[
      [0,1,"0"],[0,2,"0"],[1,2,"1"],[0,3,"0"],[1,3,"1"],[2,3,"5"],
      [0,4,"0"],[1,4,"0"],[2,4,"3"],[3,4,"0"],
      [0,5,"0"],[1,5,"0"],[2,5,"4"],[3,5,"0"],[4,5,"0"]]})";
    return path;
}

} // namespace

TEST_CASE("generate is deterministic and round-trips") {
    const auto first = run_cli("generate --u 2 --seed 6 --n-prefix 5");
    const auto second = run_cli("generate --u 2 --seed 6 --n-prefix 5");
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(tft::hypergraph_from_json(first.out).vertex_count() == 5);

    SUBCASE("the empty prefix is a valid file") {
        const auto empty = run_cli("generate --u 2 --seed 6 --n-prefix 0");
        REQUIRE(empty.exit_code == 0);
        CHECK(tft::hypergraph_from_json(empty.out).edge_count() == 0);
    }
    SUBCASE("file input round-trips byte-identically once canonical") {
        const auto canonical = run_cli("generate --input " + fixture_path());
        REQUIRE(canonical.exit_code == 0);
        const std::string canon_path = "/tmp/tft_cli_canon.json";
        std::ofstream(canon_path) << canonical.out;
        const auto again = run_cli("generate --input " + canon_path);
        CHECK(again.out == canonical.out);
        std::remove(canon_path.c_str());
    }
}

TEST_CASE("types lists vertex types and tree levels") {
    const auto vertex_types = run_cli("types --input " + fixture_path());
    REQUIRE(vertex_types.exit_code == 0);
    const auto j = nlohmann::json::parse(vertex_types.out);
    REQUIRE(j["types"].size() == 6);
    CHECK(j["types"][2]["type"] == "0|1");
    CHECK(j["types"][5]["type"] == "0|0|4|0|0");

    const auto level = run_cli("types --u 2 --level 1");
    REQUIRE(level.exit_code == 0);
    const auto lj = nlohmann::json::parse(level.out);
    CHECK(lj["count"] == 2);
    CHECK(lj["types"][0] == "*");
    CHECK(lj["types"][1] == "0");
}

TEST_CASE("height reports the trace") {
    const auto r = run_cli("height --input " + fixture_path() + " --v 4 --w 5 --modulus 2");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["height"] == 2);
    CHECK(j["chi"] == 0);
    REQUIRE(j["trace"].size() == 2);
    CHECK(j["trace"][0]["meet"] == "0|0");
    CHECK(j["trace"][1]["terminated"] == true);
}

TEST_CASE("spectrum on the fixture file") {
    const auto r = run_cli("spectrum --input " + fixture_path() + " --modulus 2 --sample-cap 100");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["histogram"].contains("1"));
    CHECK(j["histogram"].contains("2"));
    CHECK(j["convention"] == "min-height-1");
    CHECK(j["config"]["command"] == "spectrum");
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
    const std::string base =
        "spectrum --u 2 --seed 23 --n-prefix 400 --filter label:0 --sample-cap 3000 --modulus 5";
    const auto one = run_cli(base + " --workers 1");
    const auto two = run_cli(base + " --workers 2");
    const auto again = run_cli(base + " --workers 2");
    REQUIRE(one.exit_code == 0);
    CHECK(one.out == two.out);
    CHECK(two.out == again.out);

    const auto audit1 = run_cli("tree-audit --u 3 --levels 4 --workers 1");
    const auto audit2 = run_cli("tree-audit --u 3 --levels 4 --workers 2");
    CHECK(audit1.out == audit2.out);
}

TEST_CASE("tree-audit rows") {
    const auto r = run_cli("tree-audit --u 2 --levels 4");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 5);
    CHECK(j["rows"][4]["f"] == "1806");
    CHECK(j["rows"][4]["level_count"] == "1806");
    CHECK(j["rows"][4]["enumerated"] == 1806);
    CHECK(j["rows"][4]["successor_count"] == "1807");
    CHECK(j["rows"][4]["dominance"] == true);

    const auto u3 = run_cli("tree-audit --u 3 --levels 1");
    const auto j3 = nlohmann::json::parse(u3.out);
    CHECK(j3["rows"][0]["level_count"] == "1");
    CHECK(j3["rows"][1]["level_count"] == "1");

    SUBCASE("an invalid growth function is rejected unless allowed") {
        const std::string path = "/tmp/tft_cli_invalid_f.json";
        std::ofstream(path) << R"({"u":2,"values":["1","1","1"]})";
        const auto rejected = run_cli("tree-audit --u 2 --levels 2 --f file:" + path);
        CHECK(rejected.exit_code == 2);
        const auto allowed =
            run_cli("tree-audit --u 2 --levels 2 --f file:" + path + " --allow-invalid-f");
        REQUIRE(allowed.exit_code == 0);
        const auto ja = nlohmann::json::parse(allowed.out);
        CHECK(ja["config"]["f_valid"] == false);
        bool some_dominance_fails = false;
        for (const auto& row : ja["rows"]) {
            if (row["dominance"] == false) some_dominance_fails = true;
        }
        CHECK(some_dominance_fails);
        std::remove(path.c_str());
    }
}

TEST_CASE("arrow end-to-end through files") {
    using tft::BigInt;
    const auto zero = [](std::span<const tft::Vertex>) { return BigInt(0); };
    const tft::FiniteHypergraph c(2, 3, zero);
    const tft::FiniteHypergraph b(2, 2, zero);
    const tft::FiniteHypergraph a(2, 1, zero);

    const std::string path = "/tmp/tft_cli_arrow.json";

    SUBCASE("pigeonhole holds") {
        std::ofstream(path) << tft::arrow_instance_to_json({c, b, a, 2, 1});
        const auto r = run_cli("arrow --instance " + path);
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["holds"] == true);
        CHECK(j["counterexample"].is_null());
    }
    SUBCASE("self instance fails with the two-valued coloring") {
        std::ofstream(path) << tft::arrow_instance_to_json({b, b, a, 2, 1});
        const auto r = run_cli("arrow --instance " + path);
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["holds"] == false);
        CHECK(j["counterexample"] == nlohmann::json::array({1, 2}));
    }
    SUBCASE("three-vertex self instance fails at budget one") {
        std::ofstream(path) << tft::arrow_instance_to_json({c, c, a, 2, 1});
        const auto r = run_cli("arrow --instance " + path);
        REQUIRE(r.exit_code == 0);
        CHECK(nlohmann::json::parse(r.out)["holds"] == false);
        std::ofstream(path) << tft::arrow_instance_to_json({c, c, a, 2, 2});
        const auto r2 = run_cli("arrow --instance " + path);
        CHECK(nlohmann::json::parse(r2.out)["holds"] == true);
    }
    std::remove(path.c_str());
}

TEST_CASE("witness scan over the fixture") {
    const auto r = run_cli("witness --input " + fixture_path() +
                           " --v-max 3 --variant level-only");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 3);
    CHECK(j["results"][2]["found"] == true);
    CHECK(j["results"][2]["pair"] == nlohmann::json::array({4, 5}));

    const auto strict = run_cli("witness --input " + fixture_path() +
                                " --v-max 3 --variant strict");
    const auto js = nlohmann::json::parse(strict.out);
    CHECK(js["results"][2]["found"] == false);
}

TEST_CASE("exit codes distinguish failure classes") {
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("height --input " + fixture_path() + " --v 3 --w 3").exit_code == 2);
    CHECK(run_cli("spectrum --u 2 --filter nonsense --n-prefix 4").exit_code == 2);
    CHECK(run_cli("types --u 2 --level 4 --guard 10").exit_code == 3);
    CHECK(run_cli("arrow --instance /tmp/tft_does_not_exist.json").exit_code == 4);
    const std::string path = "/tmp/tft_cli_bad.json";
    std::ofstream(path) << "{ not json";
    CHECK(run_cli("generate --input " + path).exit_code == 2);
    std::remove(path.c_str());

    SUBCASE("guard error for oversized arrow instances") {
        using tft::BigInt;
        const auto zero = [](std::span<const tft::Vertex>) { return BigInt(0); };
        const tft::FiniteHypergraph c(2, 8, zero);
        const tft::FiniteHypergraph a(2, 2, zero);
        const std::string inst = "/tmp/tft_cli_arrow_big.json";
        std::ofstream(inst) << tft::arrow_instance_to_json({c, c, a, 2, 1});
        CHECK(run_cli("arrow --instance " + inst).exit_code == 3);
        std::remove(inst.c_str());
    }
}
