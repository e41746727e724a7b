#include "doctest.h"

#include "frontlab/config.hpp"
#include "frontlab/report.hpp"
#include "frontlab/scenarios.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace frontlab;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([scenario]
kind = front_speed
[reaction]
name = cubic_bistable
a = 0.25
[grid]
dx = 0.05
)";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("frontlab_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("config parses and reports typed values") {
    const Config c = Config::parse(kMinimal);
    CHECK_NOTHROW(c.validate());
    CHECK(c.str("scenario", "kind") == "front_speed");
    CHECK(c.num("grid", "dx") == 0.05);
    CHECK(c.num("grid", "x_min") == -50.0);  // default
    CHECK(c.reaction_name() == "cubic_bistable");
    CHECK(c.reaction_params().at("a") == 0.25);
}

TEST_CASE("schema errors name the field and line") {
    try {
        Config::parse("[scenario]\nkind = front_speed\n[reaction]\nname = g0\n[grid]\ndx = 0.05\nbogus = 1\n").validate();
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.field() == "grid.bogus");
        CHECK(e.line() == 7);
    }
    CHECK_THROWS_AS(Config::parse("[scenario]\nkind = front_speed\n[reaction]\nname = g0\n").validate(), SchemaError);
    CHECK_THROWS_AS(Config::parse(std::string(kMinimal) + "[nowhere]\nx = 1\n").validate(), SchemaError);
    Config neg = Config::parse(kMinimal);
    neg.set("grid.dx=-1");
    CHECK_THROWS_AS(neg.validate(), SchemaError);
    Config pol = Config::parse(kMinimal);
    pol.set("grid.policy=sideways");
    CHECK_THROWS_AS(pol.validate(), SchemaError);
}

TEST_CASE("overrides replace values and survive a text round trip") {
    Config c = Config::parse(kMinimal);
    c.set("reaction.a=0.1");
    c.set("run.t_final=12");
    CHECK(c.reaction_params().at("a") == 0.1);
    const Config back = Config::parse(c.text());
    CHECK(back.num("run", "t_final") == 12.0);
    CHECK(back.reaction_params().at("a") == 0.1);
}

TEST_CASE("catalog entries are well formed") {
    const auto& cat = scenario_catalog();
    CHECK(cat.size() >= 10);
    for (const auto& e : cat) {
        INFO(e.name);
        CHECK_NOTHROW(bundled_scenario(e.name).validate());
        const Config c = bundled_scenario(e.name);
        if (c.reaction_name() != "random_ergodic") CHECK_NOTHROW(reaction_from(c));
    }
    CHECK_THROWS_AS(bundled_scenario("no_such_scenario"), std::invalid_argument);
}

TEST_CASE("cheap bundled scenarios pass") {
    for (const char* name : {"cubic_speed_oracle", "wave_blocking_core", "bi_envelope_classification",
                             "ignition_family_check", "ignition_gap_violator"}) {
        INFO(name);
        const ScenarioResult r = run_scenario(bundled_scenario(name));
        CHECK(r.pass());
    }
}

TEST_CASE("the violator scenario carries a witness") {
    const ScenarioResult r = run_scenario(bundled_scenario("ignition_gap_violator"));
    const VerdictReport* v = r.find("violation_detected");
    REQUIRE(v != nullptr);
    CHECK(v->pass);
}

TEST_CASE("ergodic scenarios require seeds") {
    Config c = bundled_scenario("ergodic_speed_spread");
    c.set("run.seeds=");
    CHECK_THROWS_AS(run_scenario(c), SchemaError);
}

TEST_CASE("runs are deterministic and artifacts round trip") {
    Config c = bundled_scenario("cubic_pde_speed");
    c.set("run.t_final=20");
    c.set("run.fit_from=5");
    c.set("run.fine_dx=0");
    const fs::path d1 = scratch_dir("a"), d2 = scratch_dir("b");
    const ScenarioResult r1 = run_scenario(c), r2 = run_scenario(c);
    write_artifacts(r1, c, d1);
    write_artifacts(r2, c, d2);
    for (const char* f : {"snapshots.csv", "verdicts.json"}) {
        INFO(f);
        REQUIRE(fs::exists(d1 / f));
        if (std::string(f) == "snapshots.csv") CHECK(slurp(d1 / f) == slurp(d2 / f));
    }
    CHECK(fs::exists(d1 / "meta.json"));

    const auto snaps = read_snapshots_csv(d1 / "snapshots.csv");
    REQUIRE(snaps.size() == r1.snapshots.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        REQUIRE(snaps[k].u.size() == r1.snapshots[k].u.size());
        CHECK(snaps[k].t == doctest::Approx(r1.snapshots[k].t));
        for (std::size_t i = 0; i < snaps[k].u.size(); i += 97)
            CHECK(snaps[k].u[i] == doctest::Approx(r1.snapshots[k].u[i]).epsilon(1e-11));
    }
    const auto doc = nlohmann::json::parse(slurp(d1 / "verdicts.json"));
    CHECK(exit_status_of(doc) == (r1.pass() ? 0 : 1));
    CHECK(export_report(d1).find("speed_dx") != std::string::npos);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::nan("")).empty());
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("binary exits with 2 on a config missing [grid]") {
    const std::string cmd = std::string(FRONTLAB_BIN) + " run " + FRONTLAB_TEST_DATA +
                            "/missing_grid.ini -o " + scratch_dir("cli").string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
}
