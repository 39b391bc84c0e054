#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "meixner/cli.hpp"
#include "meixner/tensor_io.hpp"

using namespace meixner;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/meixner_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

const std::string kCanonical = R"({"dimension": 3, "alpha": [
  {"index": [0,0,2], "value": 0.5},
  {"index": [1,1,2], "value": 0.5},
  {"index": [2,2,2], "value": 0.5}]})";

// minimal JSON-Schema subset checker: type, required, properties, items
bool validates(const Json& value, const Json& schema) {
    if (schema.contains("type")) {
        const std::string type = schema["type"];
        if (type == "object" && !value.is_object()) return false;
        if (type == "array" && !value.is_array()) return false;
        if (type == "string" && !value.is_string()) return false;
        if (type == "boolean" && !value.is_boolean()) return false;
        if (type == "integer" && !value.is_number_integer()) return false;
        if (type == "number" && !value.is_number()) return false;
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) return false;
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key) && !validates(value[key], sub)) return false;
    }
    if (value.is_array() && schema.contains("items"))
        for (const auto& item : value)
            if (!validates(item, schema["items"])) return false;
    return true;
}

Json load_schema(const std::string& name) {
    std::ifstream f(std::string(MEIXNER_SOURCE_DIR) + "/schemas/" + name);
    REQUIRE(f.good());
    Json j;
    f >> j;
    return j;
}

} // namespace

TEST_CASE("classify subcommand") {
    const std::string path = write_temp("canonical.json", kCanonical);
    const CliResult res = run({"classify", "--input", path});
    CHECK(res.exit_code == 0);
    const Json j = Json::parse(res.out);
    CHECK(j["variant"] == "case1");
    CHECK(j["a"].get<double>() == doctest::Approx(0.5));
    CHECK(validates(j, load_schema("classification.schema.json")));
}

TEST_CASE("validate subcommand") {
    SUBCASE("canonical passes") {
        const std::string path = write_temp("canonical.json", kCanonical);
        const CliResult res = run({"validate", "--input", path});
        CHECK(res.exit_code == 0);
        const Json j = Json::parse(res.out);
        CHECK(j["pass"] == true);
        CHECK(validates(j["obstructions"],
                        load_schema("obstruction_report.schema.json")));
    }
    SUBCASE("tampered family fails with exit 1") {
        const std::string path = write_temp(
            "tampered.json", R"({"dimension": 3, "alpha": [
              {"index": [0,0,2], "value": 0.5},
              {"index": [1,1,2], "value": 0.5},
              {"index": [2,2,2], "value": 1.0}]})");
        const CliResult res = run({"validate", "--input", path});
        CHECK(res.exit_code == 1);
        CHECK(Json::parse(res.out)["pass"] == false);
    }
}

TEST_CASE("moments subcommand") {
    const std::string path = write_temp("canonical.json", kCanonical);
    SUBCASE("single index") {
        const CliResult res = run({"moments", "--input", path, "--index", "0,0,3"});
        CHECK(res.exit_code == 0);
        const Json rows = Json::parse(res.out);
        CHECK(validates(rows, load_schema("moments.schema.json")));
        CHECK(rows.size() == 1);
        CHECK(rows[0]["value"].get<double>() == doctest::Approx(1.0));
    }
    SUBCASE("max degree emits a full table") {
        const CliResult res =
            run({"moments", "--input", path, "--max-degree", "3"});
        const Json rows = Json::parse(res.out);
        CHECK(rows.size() == 20); // C(3+3,3)
    }
    SUBCASE("jsonl format streams one row per line") {
        const CliResult res = run({"moments", "--input", path, "--max-degree", "1",
                                   "--format", "jsonl"});
        int lines = 0;
        std::stringstream ss(res.out);
        std::string line;
        while (std::getline(ss, line))
            if (!line.empty()) {
                ++lines;
                CHECK(Json::parse(line).contains("index"));
            }
        CHECK(lines == 4);
    }
    SUBCASE("conflicting entries exit 3 with a machine-readable error") {
        const std::string bad = write_temp(
            "bad.json", R"({"dimension": 3, "alpha": [
              {"index": [0,0,2], "value": 1.0},
              {"index": [2,0,0], "value": 2.0}]})");
        const CliResult res = run({"moments", "--input", bad, "--index", "0,0,2"});
        CHECK(res.exit_code == 3);
        const Json err = Json::parse(res.err);
        CHECK(validates(err, load_schema("error.schema.json")));
        CHECK(err["error"]["kind"] == "ConflictingEntry");
    }
    SUBCASE("NaN in the file is rejected") {
        const std::string bad = write_temp(
            "nan.json",
            R"({"dimension": 3, "alpha": [{"index": [0,0,2], "value": 1e999}]})");
        const CliResult res = run({"moments", "--input", bad, "--index", "0,0,2"});
        CHECK(res.exit_code == 3);
    }
}

TEST_CASE("laplace subcommand") {
    SUBCASE("in-domain evaluation") {
        const CliResult res = run({"laplace", "--a", "0.5", "--at", "0,0,0.5"});
        CHECK(res.exit_code == 0);
        const Json j = Json::parse(res.out);
        CHECK(validates(j, load_schema("laplace.schema.json")));
        CHECK(j["in_domain"] == true);
        CHECK(j["value"].get<double>() ==
              doctest::Approx(std::exp(-1.0) * std::pow(0.5625, -2.0)));
    }
    SUBCASE("out of domain") {
        const CliResult res = run({"laplace", "--a", "0.5", "--at", "0,0,3"});
        CHECK(res.exit_code == 0);
        const Json j = Json::parse(res.out);
        CHECK(j["in_domain"] == false);
        CHECK(j["value"].is_null());
    }
}

TEST_CASE("sample subcommand") {
    SUBCASE("interior draws stream as CSV, deterministically per seed") {
        const CliResult a = run({"sample", "--a", "0.5", "--n", "5", "--seed", "9",
                                 "--format", "csv"});
        const CliResult b = run({"sample", "--a", "0.5", "--n", "5", "--seed", "9",
                                 "--format", "csv"});
        const CliResult c = run({"sample", "--a", "0.5", "--n", "5", "--seed", "10",
                                 "--format", "csv"});
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
        int lines = 0;
        std::stringstream ss(a.out);
        std::string line;
        while (std::getline(ss, line))
            if (!line.empty()) ++lines;
        CHECK(lines == 5);
    }
    SUBCASE("case2 draws") {
        const CliResult res =
            run({"sample", "--case2", "1,0,-1", "--n", "3"});
        CHECK(res.exit_code == 0);
        std::stringstream ss(res.out);
        std::string line;
        int lines = 0;
        while (std::getline(ss, line))
            if (!line.empty()) {
                CHECK(Json::parse(line).size() == 3);
                ++lines;
            }
        CHECK(lines == 3);
    }
    SUBCASE("mutually exclusive flags") {
        CHECK(run({"sample", "--a", "0.5", "--case2", "1,1,1", "--n", "2"}).exit_code ==
              2);
        CHECK(run({"sample", "--n", "2"}).exit_code == 2);
    }
}

TEST_CASE("oracle subcommand") {
    const std::string path = write_temp("canonical.json", kCanonical);
    SUBCASE("float axioms") {
        const CliResult res = run({"oracle", "--input", path, "--degree", "4",
                                   "--check", "axioms"});
        CHECK(res.exit_code == 0);
        const Json j = Json::parse(res.out);
        CHECK(j["max_residual"].get<double>() < 1e-8);
    }
    SUBCASE("float meixner1 recovers alpha") {
        const CliResult res = run({"oracle", "--input", path, "--degree", "4",
                                   "--check", "meixner1"});
        const Json j = Json::parse(res.out);
        CHECK(j["max_coefficient_error"].get<double>() < 1e-7);
    }
    SUBCASE("exact mode asserts hard zeros") {
        const CliResult res = run({"oracle", "--input", path, "--degree", "3",
                                   "--mode", "exact", "--check", "axioms"});
        const Json j = Json::parse(res.out);
        CHECK(j["exact_zero"] == true);
    }
}

TEST_CASE("verify subcommand") {
    const CliResult res = run({"verify", "--a", "0.5", "--profile", "quick",
                               "--out", "/tmp/meixner_test_report.json"});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("OVERALL PASS") != std::string::npos);
    std::ifstream f("/tmp/meixner_test_report.json");
    Json report;
    f >> report;
    CHECK(report["pass"] == true);
    CHECK(validates(report, load_schema("verify_report.schema.json")));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"unknowncmd"}).exit_code == 2);
    CHECK(run({"classify"}).exit_code == 2); // missing --input
    CHECK(run({}).exit_code == 2);
}

TEST_CASE("missing input file exits 3") {
    const CliResult res = run({"classify", "--input", "/tmp/does_not_exist.json"});
    CHECK(res.exit_code == 3);
    CHECK(Json::parse(res.err)["error"]["kind"] == "InputError");
}

TEST_CASE("read-only subcommands are idempotent") {
    const std::string path = write_temp("canonical.json", kCanonical);
    const CliResult a = run({"classify", "--input", path});
    const CliResult b = run({"classify", "--input", path});
    CHECK(a.out == b.out);
}

TEST_CASE("tensor files round-trip through the schema") {
    const std::string path = write_temp("canonical.json", kCanonical);
    const MeixnerSpec spec = load_spec(path);
    const Json j = spec_to_json(spec);
    CHECK(validates(j, load_schema("tensor.schema.json")));
    const MeixnerSpec reloaded = spec_from_json(j);
    CHECK(reloaded.alpha == spec.alpha);
}
