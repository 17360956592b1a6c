// run.hpp — Subcommand engine behind the CLI: binds profiles, protocol
// scenarios, and the CSV/JSON emitters. Kept out of tools/ so tests can
// drive whole runs in-process.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vendor_json.hpp"

#include "transim/config.hpp"

namespace transim {

struct RunConfig {
    std::string subcommand;
    std::string profile = "paper_device";
    std::string sequence_file;  // optional sequence.toml merged over the profile
    std::string out_dir = ".";
    std::vector<std::string> overrides;  // key=value, applied in order
    bool has_seed = false;
    std::uint64_t seed = 0;
    double trials = 1e6;
    bool emit_artifacts = true;

    // Scan knobs (defaults chosen per subcommand when <= 0).
    double omega_hz = 0.0;      // rabi drive amplitude (ordinary Hz)
    double scan_from = -1.0;    // s (or flux ratio for `spectrum`)
    double scan_to = -1.0;
    int scan_points = 0;
    double n_m_injected = 0.64; // thermometry occupancy
    double power_uw = 20.0;     // npsd pump power
    double trace_hold = -1.0;   // s; `swap` trajectory export when >= 0

    // sweep: rerun `sweep_cmd` once per value of `sweep_key`.
    std::string sweep_key;
    std::string sweep_cmd;
    std::vector<double> sweep_values;
};

struct RunResult {
    int exit_code = 0;
    nlohmann::json summary;
    std::vector<std::string> artifacts;  // files written (CSV, JSON, manifest)
};

// Execute one subcommand. Exceptions are mapped to exit codes by the CLI:
// SchemaError -> 2, ValidityError -> 3, anything else -> 1.
RunResult run(const RunConfig& config);

// Run a manifest written by a previous invocation; reproduces its outputs.
RunResult replay(const std::string& manifest_path);

// Helpers shared with tests.
nlohmann::json table_to_json(const toml::Table& table);
toml::Table json_to_table(const nlohmann::json& json);

}  // namespace transim
