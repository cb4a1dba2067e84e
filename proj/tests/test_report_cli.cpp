#include "doctest.h"

#include "modsurf/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace modsurf;

namespace {

#ifndef MODSURF_CLI_PATH
#error "MODSURF_CLI_PATH must point at the command-line binary"
#endif

struct CliResult {
    int exit_code;
    std::string out;
};

// Runs the CLI through the shell, capturing stdout; `extra` is prepended
// (environment assignments) and stderr can be redirected inside `args`.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + " \"" + MODSURF_CLI_PATH + "\" " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::vector<std::string> key_order(const ordered_json& doc) {
    std::vector<std::string> keys;
    for (const auto& item : doc.items()) keys.push_back(item.key());
    return keys;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p);
    REQUIRE(f.good());
    f << content;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}   // namespace

TEST_CASE("subgroup documents") {
    // Generators with plain and string-encoded integers.
    ordered_json doc = ordered_json::parse(
        R"({"generators": [[1, 2, 0, 1], ["1", "0", "2", "1"]]})");
    CosetRepresentation rep = subgroup_from_json(doc, kDefaultCosetBudget);
    CHECK(rep.size() == 6);

    // Coset tables.
    CosetRepresentation via_tables = subgroup_from_json(
        ordered_json{{"cosets", {{"perm_s", rep.perm_s()}, {"perm_t", rep.perm_t()}}}},
        kDefaultCosetBudget);
    CHECK(pointed_isomorphic(rep, via_tables));

    // Error paths.
    CHECK_THROWS_AS(subgroup_from_json(ordered_json::parse("[]"), 100), std::invalid_argument);
    CHECK_THROWS_AS(subgroup_from_json(ordered_json::parse("{}"), 100), std::invalid_argument);
    CHECK_THROWS_AS(subgroup_from_json(ordered_json::parse(R"({"generators": []})"), 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(subgroup_from_json(ordered_json::parse(R"({"generators": [[1, 2, 3]]})"), 100),
                    std::invalid_argument);
    // det != 1 is caught by the matrix layer.
    CHECK_THROWS_AS(
        subgroup_from_json(ordered_json::parse(R"({"generators": [[1, 2, 3, 4]]})"), 100),
        std::invalid_argument);
    CHECK_THROWS_AS(
        subgroup_from_json(ordered_json::parse(R"({"cosets": {"perm_s": [0]}})"), 100),
        std::invalid_argument);
    CHECK_THROWS_AS(subgroup_from_file("/nonexistent/path.json", 100), std::invalid_argument);
}

TEST_CASE("analyze report shape") {
    // Full group: no lift block.
    CosetRepresentation full = CosetRepresentation::from_generators(
        {UnimodularMatrix::gen_s(), UnimodularMatrix::gen_t()});
    ordered_json doc = analyze_report(full);
    CHECK(doc["mu"] == 1);
    CHECK(doc["genus"] == 0);
    CHECK(doc["torsion_free"] == false);
    CHECK(doc["lifts"].is_null());

    // Level-2 group: full lift block.
    CosetRepresentation g2 = CosetRepresentation::from_generators(
        {UnimodularMatrix::t_power(2), UnimodularMatrix(1, 0, 2, 1)});
    ordered_json d2 = analyze_report(g2);
    CHECK(d2["mu"] == 6);
    CHECK(d2["s_stable"] == true);
    REQUIRE(d2["cusps"].size() == 3);
    CHECK(d2["cusps"][0]["cusp"] == "inf");
    CHECK(d2["cusps"][0]["width"] == 2);
    CHECK(d2["cusps"][0]["real"] == true);
    REQUIRE(d2["lifts"].is_object());
    CHECK(d2["lifts"]["raw_count"] == 4);
    CHECK(d2["lifts"]["distinct_multiset_count"] == 2);
    CHECK(d2["lifts"]["note"] == std::string(kLiftCountNote));
    REQUIRE(d2["lifts"]["configurations"].size() == 4);
    CHECK(d2["lifts"]["configurations"][0]["signs"] == std::vector<int>{1, 1, -1});
    CHECK(d2["lifts"]["configurations"][0]["fibers"] ==
          std::vector<std::string>{"I2", "I2", "I*2"});
    CHECK(d2["lifts"]["configurations"][0]["chi_O"] == 1);
    CHECK(d2["lifts"]["configurations"][0]["h11"] == 10);
    CHECK(d2["lifts"]["configurations"][3]["fibers"] ==
          std::vector<std::string>{"I*2", "I*2", "I*2"});
    CHECK(d2["lifts"]["configurations"][3]["chi_O"] == 2);

    // Deterministic output.
    CHECK(analyze_report(g2).dump() == d2.dump());
}

TEST_CASE("family report schema and content") {
    GammaK g = gamma2();
    ordered_json doc = gamma_k_report(g);
    CHECK(key_order(doc) ==
          std::vector<std::string>{"k", "mu", "cusps", "fibers", "chi_O", "h11", "h1", "h1_alg",
                                   "orientable", "components", "type"});
    CHECK(doc["k"] == 2);
    CHECK(doc["mu"] == 6);
    CHECK(doc["fibers"] == std::vector<std::string>{"I*2", "I*2", "I*2"});
    CHECK(doc["chi_O"] == 2);
    CHECK(doc["h11"] == 20);
    CHECK(doc["h1"] == 20);
    CHECK(doc["h1_alg"] == 20);
    CHECK(doc["orientable"] == true);
    CHECK(doc["components"] == 1);
    CHECK(doc["type"] == "S_10");

    ordered_json d3 = gamma_k_report(build_gamma_k(3));
    CHECK(d3["chi_O"] == 3);
    CHECK(d3["h11"] == 30);
    CHECK(d3["orientable"] == false);
    CHECK(d3["type"] == "V_30");
}

TEST_CASE("verification rows") {
    ordered_json doc = verify_report(2, 5, kDefaultCosetBudget);
    CHECK(doc["from"] == 2);
    CHECK(doc["to"] == 5);
    REQUIRE(doc["rows"].size() == 4);
    for (const auto& row : doc["rows"]) {
        CHECK(row["pass"] == true);
        CHECK(row["failures"].empty());
        int k = row["k"].get<int>();
        CHECK(row["mu"] == 6 * (k - 1));
        CHECK(row["chi_O"] == k);
        CHECK(row["h11"] == 10 * k);
        CHECK(row["h1"] == 10 * k);
        CHECK(row["h1_alg"] == 10 * k);
        CHECK(row["components"] == 1);
        CHECK(row["type"] == (k % 2 == 0 ? "S_" + std::to_string(5 * k)
                                         : "V_" + std::to_string(10 * k)));
    }
    CHECK(doc["all_pass"] == true);
}

TEST_CASE("curve report") {
    ordered_json doc = curve_report(0.0, 1.0, kRealTolerance);
    CHECK(key_order(doc) ==
          std::vector<std::string>{"tau", "j", "j_normalized", "definable_over_R", "witness_tau",
                                   "components", "ambiguous_at_j_equals_1"});
    CHECK(doc["tau"]["re"] == 0.0);
    CHECK(doc["tau"]["im"] == 1.0);
    CHECK(doc["j"]["re"].get<double>() == doctest::Approx(1728.0));
    CHECK(doc["j_normalized"]["re"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["definable_over_R"] == true);
    CHECK(doc["components"] == 2);
    CHECK(doc["ambiguous_at_j_equals_1"] == true);

    // Rhombic corner point: same j, other parity.
    ordered_json half = curve_report(0.5, 0.5, kRealTolerance);
    CHECK(half["definable_over_R"] == true);
    CHECK(half["components"] == 1);
    CHECK(half["ambiguous_at_j_equals_1"] == true);

    // Generic point: nothing is real.
    ordered_json off = curve_report(0.3, 1.0, kRealTolerance);
    CHECK(off["definable_over_R"] == false);
    CHECK(off["witness_tau"].is_null());
    CHECK(off["components"].is_null());
    CHECK(off["ambiguous_at_j_equals_1"] == false);

    // Away from the threshold the count is unambiguous.
    ordered_json two = curve_report(0.0, 2.0, kRealTolerance);
    CHECK(two["components"] == 2);
    CHECK(two["ambiguous_at_j_equals_1"] == false);
    CHECK(two["j_normalized"]["re"].get<double>() == doctest::Approx(166.375));
}

TEST_CASE("text rendering") {
    std::string text = render_text(gamma_k_report(gamma2()));
    CHECK(text.find("k: 2") != std::string::npos);
    CHECK(text.find("type: S_10") != std::string::npos);
    CHECK(text.find("h11: 20") != std::string::npos);
    // Arrays of scalars render inline.
    CHECK(text.find("[I*2, I*2, I*2]") != std::string::npos);
}

TEST_CASE("cli: family and verification commands") {
    CliResult r = run_cli("gamma-k --k 2 --json 2>/dev/null");
    CHECK(r.exit_code == kExitSuccess);
    ordered_json doc = ordered_json::parse(r.out);
    CHECK(doc["type"] == "S_10");

    // Byte-identical across runs.
    CliResult again = run_cli("gamma-k --k 2 --json 2>/dev/null");
    CHECK(again.out == r.out);

    // Global flags may come before the subcommand too.
    CliResult swapped = run_cli("--json gamma-k --k 2 2>/dev/null");
    CHECK(swapped.exit_code == kExitSuccess);
    CHECK(swapped.out == r.out);

    CliResult v = run_cli("verify --from 2 --to 4 --json 2>/dev/null");
    CHECK(v.exit_code == kExitSuccess);
    CHECK(ordered_json::parse(v.out)["all_pass"] == true);

    // Text mode emits readable lines.
    CliResult t = run_cli("gamma-k --k 3 2>/dev/null");
    CHECK(t.exit_code == kExitSuccess);
    CHECK(t.out.find("type: V_30") != std::string::npos);
}

TEST_CASE("cli: analyze command") {
    auto good = temp_file("modsurf_cli_level2.json");
    write_file(good, R"({"generators": [[1, 2, 0, 1], [1, 0, 2, 1]]})");
    CliResult r = run_cli("analyze " + good.string() + " --json 2>/dev/null");
    CHECK(r.exit_code == kExitSuccess);
    ordered_json doc = ordered_json::parse(r.out);
    CHECK(doc["mu"] == 6);
    CHECK(doc["lifts"]["raw_count"] == 4);
    std::filesystem::remove(good);

    auto bad = temp_file("modsurf_cli_bad.json");
    write_file(bad, "{ not json");
    CHECK(run_cli("analyze " + bad.string() + " --json 2>/dev/null").exit_code ==
          kExitInputError);
    std::filesystem::remove(bad);

    CHECK(run_cli("analyze /no/such/file.json 2>/dev/null").exit_code == kExitInputError);
}

TEST_CASE("cli: svg output") {
    auto svg = temp_file("modsurf_cli_domain.svg");
    std::filesystem::remove(svg);
    CliResult r = run_cli("gamma-k --k 3 --svg " + svg.string() + " --json 2>/dev/null");
    CHECK(r.exit_code == kExitSuccess);
    REQUIRE(std::filesystem::exists(svg));
    std::string content = slurp(svg);
    CHECK(content.rfind("<svg", 0) == 0);
    CHECK(content.find("</svg>") != std::string::npos);
    std::filesystem::remove(svg);
}

TEST_CASE("cli: exit codes") {
    // Input errors.
    CHECK(run_cli("verify --from 4 --to 2 2>/dev/null").exit_code == kExitInputError);
    CHECK(run_cli("2>/dev/null").exit_code == kExitInputError);               // no subcommand
    CHECK(run_cli("frobnicate 2>/dev/null").exit_code == kExitInputError);    // unknown command
    CHECK(run_cli("gamma-k --k 1 2>/dev/null").exit_code == kExitInputError); // below range
    CHECK(run_cli("curve --tau 0 -1 2>/dev/null").exit_code == kExitInputError);
    // Help succeeds.
    CHECK(run_cli("--help 2>/dev/null").exit_code == kExitSuccess);

    // Budget exhaustion, via the flag and via the environment.
    CHECK(run_cli("gamma-k --k 12 --coset-budget 50 2>/dev/null").exit_code ==
          kExitBudgetExceeded);
    CHECK(run_cli("gamma-k --k 12 2>/dev/null", "MODSURF_COSET_BUDGET=50").exit_code ==
          kExitBudgetExceeded);

    // An unparsable environment value warns and falls back to the default.
    auto errfile = temp_file("modsurf_cli_stderr.txt");
    CliResult r = run_cli("gamma-k --k 2 --json 2>" + errfile.string(),
                          "MODSURF_COSET_BUDGET=banana");
    CHECK(r.exit_code == kExitSuccess);
    std::string err = slurp(errfile);
    CHECK(err.find("MODSURF_COSET_BUDGET") != std::string::npos);
    std::filesystem::remove(errfile);
}

TEST_CASE("cli: curve command") {
    CliResult r = run_cli("curve --tau 0.5 0.5 --json 2>/dev/null");
    CHECK(r.exit_code == kExitSuccess);
    ordered_json doc = ordered_json::parse(r.out);
    CHECK(doc["definable_over_R"] == true);
    CHECK(doc["components"] == 1);
    CHECK(doc["ambiguous_at_j_equals_1"] == true);
    CHECK(doc["j_normalized"]["re"].get<double>() == doctest::Approx(1.0));
}
