#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "transim/parallel.hpp"
#include "transim/run.hpp"

using namespace transim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

RunConfig base(const std::string& sub, const std::string& out) {
    RunConfig config;
    config.subcommand = sub;
    config.out_dir = out;
    return config;
}

}  // namespace

TEST_CASE("validate reports passing checks") {
    RunConfig config = base("validate", "/tmp/transim_run_validate");
    const RunResult result = run(config);
    CHECK(result.exit_code == 0);
    CHECK(result.summary.at("checks").size() >= 3);
}

TEST_CASE("monte carlo subcommands demand a seed") {
    RunConfig config = base("thermometry", "/tmp/transim_run_noseed");
    config.trials = 1e6;
    CHECK_THROWS_AS(run(config), SchemaError);
}

TEST_CASE("rabi with zero drive writes a flat CSV and exits cleanly") {
    RunConfig config = base("rabi", "/tmp/transim_run_rabi0");
    config.omega_hz = 1e-9;  // effectively off but accepted as a value
    config.scan_points = 17;
    config.scan_from = 0.0;
    config.scan_to = 64e-9;
    const RunResult result = run(config);
    CHECK(result.exit_code == 0);
    const std::string csv = slurp("/tmp/transim_run_rabi0/rabi.csv");
    CHECK(csv.find("duration_ns,p_e") == 0);
}

TEST_CASE("thermometry run is byte-identical across repeats and thread counts") {
    const auto run_once = [&](const std::string& dir, int threads) {
        const int original = max_threads();
        set_threads(threads);
        RunConfig config = base("thermometry", dir);
        config.has_seed = true;
        config.seed = 7;
        config.trials = 2e7;
        const RunResult result = run(config);
        set_threads(original);
        CHECK(result.exit_code == 0);
        return slurp(dir + "/thermometry.csv");
    };
    const std::string first = run_once("/tmp/transim_run_th1", 1);
    const std::string second = run_once("/tmp/transim_run_th2", 4);
    const std::string third = run_once("/tmp/transim_run_th3", 4);
    CHECK(first == second);
    CHECK(second == third);
}

TEST_CASE("replaying a manifest reproduces the outputs") {
    RunConfig config = base("thermometry", "/tmp/transim_run_replay_a");
    config.has_seed = true;
    config.seed = 11;
    config.trials = 1e7;
    const RunResult original = run(config);
    CHECK(original.exit_code == 0);
    const std::string original_csv = slurp("/tmp/transim_run_replay_a/thermometry.csv");

    // Point the replay at a fresh directory by editing the manifest copy.
    nlohmann::json manifest;
    {
        std::ifstream file("/tmp/transim_run_replay_a/thermometry_manifest.json");
        file >> manifest;
    }
    manifest["config"]["out_dir"] = "/tmp/transim_run_replay_b";
    {
        std::ofstream file("/tmp/transim_run_replay_b.json");
        file << manifest.dump();
    }
    const RunResult replayed = replay("/tmp/transim_run_replay_b.json");
    CHECK(replayed.exit_code == 0);
    CHECK(slurp("/tmp/transim_run_replay_b/thermometry.csv") == original_csv);
}

TEST_CASE("sweep emits one row per value") {
    RunConfig config = base("sweep", "/tmp/transim_run_sweep");
    config.sweep_key = "qubit.t2_star_s";
    config.sweep_cmd = "ramsey";
    config.sweep_values = {500e-9, 678e-9};
    config.scan_points = 76;
    config.scan_from = 0.0;
    config.scan_to = 1.5e-6;
    const RunResult result = run(config);
    CHECK(result.exit_code == 0);
    const auto& points = result.summary.at("points");
    REQUIRE(points.size() == 2);
    // Shorter T2* fits shorter.
    CHECK(points[0].at("t2_star_ns").get<double>() < points[1].at("t2_star_ns").get<double>());
}

TEST_CASE("json and toml trees round-trip for manifests") {
    const toml::Table table = toml::parse("a = 1.5\n[t]\nb = \"x\"\nflag = true\n[[arr]]\nv = 1\n[[arr]]\nv = 2\n");
    const toml::Table back = json_to_table(table_to_json(table));
    CHECK(toml::get_number(back, "a") == 1.5);
    CHECK(toml::get_string(back, "t.b") == "x");
    CHECK(toml::get_bool_or(back, "t.flag", false));
    CHECK(toml::get_array(back, "arr").size() == 2);
}
