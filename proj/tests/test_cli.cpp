#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"
#include "nnspectra/laws.hpp"
#include "nnspectra/matrix_io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(NNSPECTRA_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
        result.output += buffer.data();
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp(const std::string& name, const std::string& contents) {
    std::string path = std::string("/tmp/nnspectra_test_") + name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path;
}

std::string matrix_file(const std::string& name, const nnspectra::NonnegativeMatrix& m) {
    return write_temp(name, nnspectra::matrix_to_json(m).dump());
}

}  // namespace

TEST_CASE("param reports all four parameters") {
    std::string file = matrix_file("a_rm.json", fixtures::incomparable_a());
    auto run = run_cli("param " + file);
    REQUIRE(run.exit_code == 0);
    json doc = json::parse(run.output);
    CHECK(doc["command"] == "param");
    CHECK(doc["results"]["rank"] == 3);
    CHECK(doc["results"]["F"] == "4");
    CHECK(doc["results"]["subrank"]["size"] == 2);
    CHECK(doc["results"]["nnrank"]["lower"] == 4);
    CHECK(doc["results"]["nnrank"]["upper"] == 4);
    CHECK(doc["results"]["nnrank"]["certified"] == true);
    CHECK(doc["warnings"].empty());
}

TEST_CASE("param on identity and zero matrices") {
    std::string eye = matrix_file("eye4.json", nnspectra::NonnegativeMatrix::identity(4));
    json doc = json::parse(run_cli("param " + eye).output);
    CHECK(doc["results"]["rank"] == 4);
    CHECK(doc["results"]["F"] == "4");
    CHECK(doc["results"]["subrank"]["size"] == 4);
    CHECK(doc["results"]["nnrank"]["upper"] == 4);

    std::string zero = matrix_file("zero.json", nnspectra::NonnegativeMatrix::zeros(2, 2));
    doc = json::parse(run_cli("param " + zero).output);
    CHECK(doc["results"]["rank"] == 0);
    CHECK(doc["results"]["F"] == "0");
    CHECK(doc["results"]["subrank"]["size"] == 0);
    CHECK(doc["results"]["nnrank"]["upper"] == 0);
}

TEST_CASE("csv input needs the format flag") {
    std::string file = write_temp("a.csv", nnspectra::matrix_to_csv(fixtures::incomparable_a()));
    auto run = run_cli("--format csv param " + file);
    REQUIRE(run.exit_code == 0);
    CHECK(json::parse(run.output)["results"]["rank"] == 3);
}

TEST_CASE("byte-identical reports for identical invocations") {
    std::string file = matrix_file("a_rm2.json", fixtures::incomparable_a());
    auto first = run_cli("param " + file + " --seeds 1,2");
    auto second = run_cli("param " + file + " --seeds 1,2");
    CHECK(first.output == second.output);
    auto pretty = run_cli("--pretty param " + file);
    CHECK(pretty.output != first.output);
}

TEST_CASE("parse and domain errors exit with code 2") {
    std::string bad = write_temp("bad.json", "{\"rows\": 1}");
    CHECK(run_cli("param " + bad).exit_code == 2);
    std::string negative = write_temp("neg.csv", "1,-1\n");
    CHECK(run_cli("--format csv param " + negative).exit_code == 2);
    CHECK(run_cli("param /nonexistent/file.json").exit_code == 2);
}

TEST_CASE("budget errors exit with code 3") {
    std::string eye = matrix_file("eye8.json", nnspectra::NonnegativeMatrix::identity(8));
    auto run = run_cli("asymptotic " + eye + " --max-power 9");
    CHECK(run.exit_code == 3);
}

TEST_CASE("asymptotic command reports the sandwich") {
    std::string file = matrix_file("a_rm3.json", fixtures::incomparable_a());
    auto run = run_cli("asymptotic " + file + " --max-power 2");
    REQUIRE(run.exit_code == 0);
    json doc = json::parse(run.output);
    CHECK(doc["results"]["asynrank"]["lower"] == "4");
    CHECK(doc["results"]["asynrank"]["upper"] == "4");
    CHECK(doc["results"]["per_power"].size() == 2);

    std::string eye = matrix_file("eye2.json", nnspectra::NonnegativeMatrix::identity(2));
    doc = json::parse(run_cli("asymptotic " + eye + " --max-power 4").output);
    CHECK(doc["results"]["asynrank"]["lower"] == "2");
    CHECK(doc["results"]["asympsubrank"]["upper"] == "2");

    nnspectra::NonnegativeMatrix tri{{1, 2, 0, 1}, {0, 3, 1, 0}, {0, 0, 1, 1}};
    std::string tri_file = matrix_file("tri34.json", tri);
    doc = json::parse(run_cli("asymptotic " + tri_file + " --max-power 3").output);
    CHECK(doc["results"]["asynrank"]["lower"] == "3");
    CHECK(doc["results"]["asynrank"]["upper"] == "3");
    CHECK(doc["results"]["asympsubrank"]["lower"] == "3");
    CHECK(doc["results"]["asympsubrank"]["upper"] == "3");
}

TEST_CASE("congruent and equivalent commands") {
    auto a = fixtures::incomparable_a();
    std::string file_a = matrix_file("cong_a.json", a);

    // Permute rows/cols and rescale: congruent.
    nnspectra::MatrixSampler sampler(5);
    auto row = sampler.monomial(a.rows());
    auto col = sampler.monomial(a.cols());
    auto moved = nnspectra::multiply(nnspectra::multiply(row.to_matrix(), a),
                                     col.to_matrix().transpose());
    std::string file_b = matrix_file("cong_b.json", moved);

    auto run = run_cli("congruent " + file_a + " " + file_b);
    REQUIRE(run.exit_code == 0);
    json doc = json::parse(run.output);
    CHECK(doc["results"]["congruent"] == true);
    CHECK(doc["results"].contains("row_transform"));

    std::string file_pad = matrix_file(
        "equiv_pad.json", direct_sum(a, nnspectra::NonnegativeMatrix::zeros(2, 3)));
    doc = json::parse(run_cli("equivalent " + file_a + " " + file_pad).output);
    CHECK(doc["results"]["equivalent"] == true);

    std::string eye2 = matrix_file("eq_eye2.json", nnspectra::NonnegativeMatrix::identity(2));
    std::string eye3 = matrix_file("eq_eye3.json", nnspectra::NonnegativeMatrix::identity(3));
    doc = json::parse(run_cli("equivalent " + eye2 + " " + eye3).output);
    CHECK(doc["results"]["equivalent"] == false);

    // Tiny budget: undecided, exit 4.
    auto tight = run_cli("--budget 2 congruent " + file_a + " " + file_a);
    CHECK(tight.exit_code == 4);
    CHECK(json::parse(tight.output)["results"]["status"] == "unknown");
}

TEST_CASE("cover command") {
    std::string file = matrix_file("cover_a.json", fixtures::incomparable_a());
    auto run = run_cli("cover " + file + " --t 1");
    REQUIRE(run.exit_code == 0);
    json doc = json::parse(run.output);
    CHECK(doc["results"]["F_t"] == "4");
    CHECK(doc["results"]["F"] == "4");
}

TEST_CASE("triangular command") {
    nnspectra::NonnegativeMatrix tri{{1, 2, 1}, {0, 1, 0}, {0, 0, 3}};
    std::string file = matrix_file("tri3.json", tri);
    auto run = run_cli("triangular " + file + " --power 3");
    REQUIRE(run.exit_code == 0);
    json doc = json::parse(run.output);
    CHECK(doc["results"]["count"] == "6");

    // Violated precondition: exit 2.
    nnspectra::NonnegativeMatrix dense{{1, 1}, {1, 1}};
    std::string bad = matrix_file("tri_bad.json", dense);
    CHECK(run_cli("triangular " + bad + " --power 2").exit_code == 2);
}

TEST_CASE("propcheck command") {
    auto ok = run_cli("--seed 13 propcheck --point rank --trials 15 --max-dim 3");
    REQUIRE(ok.exit_code == 0);
    json doc = json::parse(ok.output);
    CHECK(doc["results"]["ok"] == true);
    CHECK(doc["results"]["violations"].empty());

    // Global flags are accepted after the subcommand too.
    auto trailing = run_cli("propcheck --point rank --trials 15 --max-dim 3 --seed 13");
    REQUIRE(trailing.exit_code == 0);
    CHECK(json::parse(trailing.output)["parameters"]["seed"] == 13);
    CHECK(trailing.output == ok.output);

    auto strassen = run_cli("--seed 13 propcheck --point strassen --trials 10 --max-dim 3");
    CHECK(strassen.exit_code == 0);

    auto cover = run_cli("--seed 13 propcheck --point fractional_cover --trials 10 --max-dim 3");
    CHECK(cover.exit_code == 0);
}

TEST_CASE("output file option") {
    std::string file = matrix_file("out_a.json", fixtures::incomparable_a());
    std::string out_path = "/tmp/nnspectra_test_report.json";
    auto run = run_cli("--output " + out_path + " param " + file);
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.empty());
    std::ifstream in(out_path);
    json doc = json::parse(in);
    CHECK(doc["results"]["rank"] == 3);
}
