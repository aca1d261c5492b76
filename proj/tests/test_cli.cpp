#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "magnitude/cli.hpp"
#include "magnitude/io.hpp"

using namespace magnitude;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "magtool-tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_q4() {
    auto path = (temp_dir() / "q4.json").string();
    io::save_json(path, io::similarity_json(fixtures::q4()));
    return path;
}

} // namespace

TEST_CASE("mag subcommand: exact magnitude of the q4 fixture") {
    auto r = run_cli({"mag", "--input", write_q4(), "--mode", "exact"});
    REQUIRE(r.code == 0);
    auto doc = r.json();
    CHECK(doc["magnitude"] == "5/3");
    CHECK(doc["weighting"][0] == "1/2");
    CHECK(doc["weighting"][2] == "1/3");
}

TEST_CASE("posdef and decompose subcommands") {
    auto q4 = write_q4();
    auto pd = run_cli({"posdef", "--input", q4});
    REQUIRE(pd.code == 0);
    CHECK(pd.json()["positive_definite"] == true);
    CHECK(pd.json()["minors"].back() == "1/3");

    auto dec = run_cli({"decompose", "--input", q4, "--pair", "1,2"});
    REQUIRE(dec.code == 0);
    auto doc = dec.json();
    CHECK(doc["b_zero"] == "1/3");
    CHECK(doc["residual"] == "0/1");
    CHECK(doc["lhs"] == doc["rhs"]);
}

TEST_CASE("inclexcl subcommand carries the report schema") {
    auto r = run_cli({"inclexcl", "--input", write_q4(), "--pair", "1,2"});
    REQUIRE(r.code == 0);
    auto doc = r.json();
    CHECK(doc["pair"] == nlohmann::json({1, 2}));
    CHECK(doc["b_minus"] == "1/4");
    CHECK(doc["b_zero"] == "1/3");
    CHECK(doc["delta_direct"] == "0/1");
    CHECK(doc["delta_formula"] == "0/1");
    CHECK(doc["c1"] == false);
    CHECK(doc["c2"].is_boolean());
}

TEST_CASE("conditions subcommand on the first circle example") {
    auto path = (temp_dir() / "circle1.json").string();
    auto gen = run_cli({"gen", "--fixture", "circle1", "--output", path});
    REQUIRE(gen.code == 0);
    auto r = run_cli({"conditions", "--input", path, "--a", "1,3,4,5", "--b", "2,3,4,5"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["c1"] == true);
    CHECK(r.json()["c2"] == false);
}

TEST_CASE("homology subcommand snaps the requested length") {
    auto path = (temp_dir() / "mv4.json").string();
    REQUIRE(run_cli({"gen", "--fixture", "mv4", "--output", path}).code == 0);

    auto r = run_cli({"homology", "--input", path, "--k", "1", "--ell", "1.620139"});
    REQUIRE(r.code == 0);
    auto doc = r.json();
    CHECK(doc["rank"] == 2);
    CHECK(doc["torsion"].empty());
    CHECK(doc["basis_size"][1] == 2);

    // a similarity file cannot drive the homology pipeline
    auto bad = run_cli({"homology", "--input", write_q4(), "--k", "1", "--ell", "1.0"});
    CHECK(bad.code == 2);
}

TEST_CASE("gen: reproducible random spaces accepted by every consumer") {
    auto dir = temp_dir();
    auto a = (dir / "gen-a.json").string();
    auto b = (dir / "gen-b.json").string();
    REQUIRE(run_cli({"gen", "--n", "5", "--seed", "11", "--output", a}).code == 0);
    REQUIRE(run_cli({"gen", "--n", "5", "--seed", "11", "--output", b}).code == 0);

    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());

    for (const char* sub : {"mag", "posdef", "decompose", "inclexcl"})
        CHECK(run_cli({sub, "--input", a}).code == 0);
    CHECK(run_cli({"conditions", "--input", a, "--a", "1,3,4,5", "--b", "2,3,4,5"}).code == 0);
}

TEST_CASE("exit codes distinguish input errors from verdict failures") {
    CHECK(run_cli({"mag", "--input", "/nonexistent/file.json"}).code == 2);

    auto bad = (temp_dir() / "bad.json").string();
    std::ofstream(bad) << "{ not json";
    CHECK(run_cli({"mag", "--input", bad}).code == 2);

    // exact mode rejects distance files
    auto mv = (temp_dir() / "mv4b.json").string();
    REQUIRE(run_cli({"gen", "--fixture", "mv4", "--output", mv}).code == 0);
    CHECK(run_cli({"mag", "--input", mv, "--mode", "exact"}).code == 2);

    // invalid matrix content is an input error naming the failure
    auto invalid = (temp_dir() / "invalid.json").string();
    std::ofstream(invalid) << R"({"mode":"similarity","n":3,"matrix":
        [["1/1","1/10","1/2"],["1/10","1/1","1/2"],["1/2","1/2","1/1"]]})";
    auto r = run_cli({"posdef", "--input", invalid});
    CHECK(r.code == 2);
    CHECK(r.err.find("triangle") != std::string::npos);

    CHECK(run_cli({"decompose", "--input", write_q4(), "--pair", "1,9"}).code == 2);
    CHECK(run_cli({"nonsense-subcommand"}).code == 2);
}

TEST_CASE("singular zeta is a defined outcome, not a failure") {
    auto path = (temp_dir() / "singular5.json").string();
    io::save_json(path, io::similarity_json(testing_support::singular5()));
    auto r = run_cli({"mag", "--input", path});
    REQUIRE(r.code == 0);
    CHECK(r.json()["error"]["kind"] == "singularity");
}

TEST_CASE("verify subcommand: exit code reflects the verdict; csv output") {
    auto r = run_cli({"verify", "--theorem", "bounds-order", "--samples", "50", "--seed",
                      "4", "--serial"});
    CHECK(r.code == 0);
    CHECK(r.json()["passed"] == true);

    auto csv = run_cli({"verify", "--theorem", "circle-examples", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("field,value") == 0);
}

TEST_CASE("search5 subcommand emits and stores the witness") {
    auto witness = (temp_dir() / "witness5.json").string();
    auto r = run_cli({"search5", "--witness", witness});
    REQUIRE(r.code == 0);
    CHECK(r.json()["z"] == "3/4");
    CHECK(r.json()["determinant"] == "-2401/524288");

    // the stored fixture reloads as a valid, non-positive-definite space
    auto reload = run_cli({"posdef", "--input", witness, "--mode", "exact"});
    REQUIRE(reload.code == 0);
    CHECK(reload.json()["positive_definite"] == false);
}

TEST_CASE("gen rejects unknown fixtures") {
    CHECK(run_cli({"gen", "--fixture", "dodecahedron"}).code == 2);
}
