#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "endopriv/experiment/commands.hpp"
#include "endopriv/experiment/csv.hpp"

namespace fs = std::filesystem;
using namespace endopriv::experiment;

namespace {

const fs::path kFixtures = ENDOPRIV_FIXTURE_DIR;
const fs::path kGolden = ENDOPRIV_GOLDEN_DIR;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "endopriv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const char* name) {
    const fs::path dir = fs::temp_directory_path() / "endopriv_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden: solve") {
    auto r = run({"solve", "--config", fixture("low_linear_p6.json")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == slurp(kGolden / "low_linear_p6.csv"));

    r = run({"solve", "--config", fixture("high_constant.json")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == slurp(kGolden / "high_constant.csv"));
}

TEST_CASE("golden: sweeps") {
    for (const char* name : {"low_linear_sweep", "special_linear_sweep", "low_constant_boundary"}) {
        CAPTURE(name);
        const auto r = run({"sweep", "--config", fixture((std::string(name) + ".json").c_str())});
        CHECK(r.code == kExitOk);
        CHECK(r.out == slurp(kGolden / (std::string(name) + ".csv")));
    }
}

TEST_CASE("sweep writes CSV and SVG files") {
    const auto csv = scratch("moderate.csv");
    fs::remove(csv);
    const auto r = run({"sweep", "--config", fixture("moderate_constant_sweep.json"), "--out", csv.string(), "--quiet"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.err.empty());
    std::ifstream in(csv);
    const auto rows = read_csv(in);
    CHECK(rows.size() == 50);
    bool seen_full = false;
    for (const auto& row : rows) {
        // Regimes switch from partial to full at P-bar = 2 and never back.
        CHECK((row.regime == "full") == (row.price >= 2.0));
        if (seen_full) CHECK(row.regime == "full");
        seen_full = seen_full || row.regime == "full";
    }

    const auto svg = scratch("moderate.svg");
    fs::remove(svg);
    const auto p = run({"plot", csv.string(), "--out", svg.string()});
    CHECK(p.code == kExitOk);
    CHECK(slurp(svg).find("<svg") == 0);
}

TEST_CASE("special sweep rows hold a capped interval and a full point") {
    const auto r = run({"sweep", "--config", fixture("special_linear_sweep.json")});
    std::istringstream in(r.out);
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 32);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        CHECK(rows[i].regime == "mixed");
        CHECK(*rows[i].alpha_hi == doctest::Approx(std::min(1.0, 1.0 / rows[i].price)));
        CHECK(rows[i + 1].regime == "full");
        CHECK(rows[i + 1].price == rows[i].price);
    }
}

TEST_CASE("exit code matrix") {
    // 0: success, including the validation suite.
    for (const char* name : {"low_linear_p6.json", "high_constant.json", "moderate_constant_sweep.json",
                             "low_linear_sweep.json", "special_linear_sweep.json",
                             "low_constant_boundary.json", "personalized_oracle.json"}) {
        CAPTURE(name);
        CHECK(run({"validate", "--config", fixture(name), "--quiet"}).code == kExitOk);
    }
    // 1: a corrupted analytic formula must be caught.
    const auto m = run({"validate", "--config", fixture("mutation.json")});
    CHECK(m.code == kExitValidationFailed);
    CHECK(m.out.find("BREACH") != std::string::npos);
    // 2: configuration errors.
    CHECK(run({"solve", "--config", fixture("unsorted_budgets.json")}).code == kExitConfigError);
    CHECK(run({"sweep", "--config", fixture("empty_prices.json")}).code == kExitConfigError);
    CHECK(run({"validate", "--config", fixture("sshaped_no_oracle.json")}).code == kExitConfigError);
    CHECK(run({"solve", "--config", fixture("unknown_key.json")}).code == kExitConfigError);
    CHECK(run({"solve", "--config", fixture("moderate_constant_sweep.json")}).code == kExitConfigError);
    CHECK(run({"solve", "--config", fixture("does_not_exist.json")}).code == kExitConfigError);
    CHECK(run({"solve"}).code == kExitConfigError);
    CHECK(run({"frobnicate"}).code == kExitConfigError);
    CHECK(run({"solve", "--config", fixture("low_linear_p6.json"), "--grid", "4"}).code == kExitConfigError);
    // 3: I/O errors.
    CHECK(run({"sweep", "--config", fixture("moderate_constant_sweep.json"), "--out",
               "/nonexistent-dir/table.csv"}).code == kExitIoError);
    CHECK(run({"plot", "/nonexistent-dir/table.csv", "--out", scratch("x.svg").string()}).code ==
          kExitIoError);
}

TEST_CASE("global overrides") {
    const auto coarse = run({"sweep", "--config", fixture("low_linear_sweep.json"), "--grid", "64"});
    CHECK(coarse.code == kExitOk);
    const auto seeded = run({"validate", "--config", fixture("personalized_oracle.json"), "--seed", "9"});
    CHECK(seeded.code == kExitOk);
    CHECK(seeded.out.find("numeric_vs_oracle[9]") != std::string::npos);
    CHECK(seeded.out.find("numeric_vs_oracle[1]") == std::string::npos);
    const auto help = run({"--help"});
    CHECK(help.code == kExitOk);
}

}  // TEST_SUITE
