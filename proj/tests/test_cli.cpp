#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rslab/runner.hpp"

using namespace rslab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& stem) : path(fs::temp_directory_path() / stem) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* kFlatText = R"(# minimal flat scenario
space.m = 2
space.alpha = 1
space.r_max = 50
space.warp = euclidean
space.density = const
domain.R = 1
checks = cd-scan, neumann
)";

}  // namespace

TEST_CASE("scenario parsing") {
    SUBCASE("valid text round-trips typed accessors") {
        const Scenario s = parse_scenario(
            "space.m = 3\n"
            "# a comment line\n"
            "space.alpha = 0.5\n"
            "sobolev.r_list = 10, 100\n"
            "checks = cd-scan, avr\n");
        CHECK(s.get_number("space.m") == 3.0);
        CHECK(s.get_integer("space.m", 0) == 3);
        CHECK(s.get_number("space.alpha") == 0.5);
        CHECK(s.get_number("missing.key", 7.5) == 7.5);
        CHECK(s.get_numbers("sobolev.r_list", {}) == std::vector<double>{10.0, 100.0});
        CHECK(s.get_strings("checks") == std::vector<std::string>{"cd-scan", "avr"});
        CHECK_FALSE(s.has("space.warp"));
    }

    SUBCASE("duplicate keys are rejected with the offending line") {
        try {
            parse_scenario("a = 1\nb = 2\na = 3\n");
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(e.line == 3);
            CHECK(e.key == "a");
        }
    }

    SUBCASE("missing '=' and bad numbers are rejected") {
        CHECK_THROWS_AS(parse_scenario("just some words\n"), ScenarioError);
        const Scenario s = parse_scenario("x = notanumber\n");
        CHECK_THROWS_AS(s.get_number("x"), ScenarioError);
        CHECK_THROWS_AS(s.get_string("absent"), ScenarioError);
    }
}

TEST_CASE("scenario space construction") {
    const Scenario s = parse_scenario(kFlatText);
    const RotSymSpace sp = s.make_space();
    CHECK(sp.m() == 2);
    CHECK(sp.alpha() == 1.0);
    CHECK(sp.r_max() == 50.0);
    CHECK(sp.warp().kind() == "euclidean");
    CHECK(sp.density().kind() == "const");

    SUBCASE("parameterized presets pick up dotted parameters") {
        const Scenario t = parse_scenario(
            "space.m = 2\nspace.alpha = 1\nspace.r_max = 10\n"
            "space.warp = capped_power\nspace.warp.beta = 0.5\n"
            "space.density = power_density\nspace.density.q = 2\n");
        const RotSymSpace spc = t.make_space();
        CHECK(spc.warp().kind() == "capped_power");
        CHECK(spc.density().kind() == "power_density");
        CHECK(spc.warp().value(3.0) ==
              doctest::Approx(3.0 * std::pow(10.0, -0.25)).epsilon(1e-12));
    }
}

TEST_CASE("scenario runner") {
    const Scenario s = parse_scenario(kFlatText);

    SUBCASE("passing run writes report and series") {
        TempDir tmp("rslab_cli_pass");
        RunOptions opt;
        opt.out_dir = tmp.path.string();
        opt.plots = false;
        CHECK(run_scenario(s, opt) == 0);
        CHECK(fs::exists(tmp.path / "report.json"));
        CHECK(fs::exists(tmp.path / "meta.json"));
        const std::string report = slurp(tmp.path / "report.json");
        CHECK(report.find("\"status\"") != std::string::npos);
        CHECK(report.find("cd-scan") != std::string::npos);
    }

    SUBCASE("unknown check is a configuration error (exit 2)") {
        Scenario bad = s;
        bad.raw["checks"] = "definitely-not-a-check";
        TempDir tmp("rslab_cli_badcheck");
        RunOptions opt;
        opt.out_dir = tmp.path.string();
        opt.plots = false;
        CHECK(run_scenario(bad, opt) == 2);
    }

    SUBCASE("reports are byte-identical across runs with a fixed seed") {
        TempDir a("rslab_cli_det_a"), b("rslab_cli_det_b");
        RunOptions opt;
        opt.plots = false;
        opt.seed = 7;
        opt.out_dir = a.path.string();
        REQUIRE(run_scenario(s, opt) == 0);
        opt.out_dir = b.path.string();
        REQUIRE(run_scenario(s, opt) == 0);
        CHECK(slurp(a.path / "report.json") == slurp(b.path / "report.json"));
    }
}

TEST_CASE("family exploration") {
    const Scenario fam = parse_scenario(
        "family.m = 2\n"
        "family.r_max = 64\n"
        "family.alpha = 1\n"
        "family.beta = 0.5, 1\n"
        "family.q = 0, 2\n");

    SUBCASE("budget caps the number of evaluated rows") {
        const auto rows = explore_family(fam, 3);
        CHECK(rows.size() <= 3);
    }

    SUBCASE("certified rows sort first and the table serializes") {
        const auto rows = explore_family(fam, 100);
        REQUIRE(!rows.empty());
        bool seen_uncertified = false;
        for (const auto& row : rows) {
            if (!row.certified) seen_uncertified = true;
            // once an uncertified row appears no certified row may follow
            if (seen_uncertified) CHECK_FALSE(row.certified);
        }
        // beta = 0.5, q = 0 is a certified cone-like profile in this family
        CHECK(rows.front().certified);
        CHECK(rows.front().beta == doctest::Approx(0.5));
        CHECK(rows.front().q == 0.0);
        const std::string table = explore_table_json(rows);
        CHECK(table.find("cd_margin") != std::string::npos);
    }
}
