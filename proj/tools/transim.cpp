// transim.cpp — Command-line entry point.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "transim/parallel.hpp"
#include "transim/run.hpp"

namespace {

void apply_thread_cap() {
    if (const char* env = std::getenv("TRANSDUCE_SIM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) transim::set_threads(std::min(cap, transim::max_threads()));
    }
}

int dispatch(const transim::RunConfig& config, const std::string& replay_path) {
    try {
        const transim::RunResult result =
            replay_path.empty() ? transim::run(config) : transim::replay(replay_path);
        std::cout << result.summary.dump(2) << "\n";
        return result.exit_code;
    } catch (const transim::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const transim::ValidityError& e) {
        std::cerr << "validity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"Pulsed microwave-to-optical quantum transduction simulator"};
    app.require_subcommand(0, 1);

    transim::RunConfig config;
    std::string replay_path;
    double seed_value = -1.0;

    app.add_option("--replay", replay_path, "Re-run a manifest written by a previous invocation");

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--profile", config.profile, "Device profile name or path (default paper_device)");
        cmd->add_option("--sequence", config.sequence_file, "sequence.toml merged over the profile");
        cmd->add_option("--out", config.out_dir, "Output directory (default .)");
        cmd->add_option("--seed", seed_value, "Monte Carlo seed (required for counting subcommands)");
        cmd->add_option("--trials", config.trials, "Monte Carlo trials (accepts 1e9-style values)");
        cmd->add_option("--override", config.overrides, "Config override key=value (repeatable)");
        cmd->add_option("--from", config.scan_from, "Scan start (seconds, or flux ratio for spectrum)");
        cmd->add_option("--to", config.scan_to, "Scan end");
        cmd->add_option("--points", config.scan_points, "Scan point count");
    };

    for (const char* name : {"validate", "rabi", "swap", "phonon-t1", "ramsey", "spectrum", "npsd",
                             "thermometry", "heating", "qp", "transduce", "optical-rabi", "sweep"}) {
        CLI::App* cmd = app.add_subcommand(name, "");
        add_common(cmd);
        if (std::string(name) == "rabi") {
            cmd->add_option("--omega", config.omega_hz, "Drive amplitude Omega/2pi in Hz");
        } else if (std::string(name) == "swap") {
            cmd->add_option("--trace-hold", config.trace_hold, "Emit the time trace for one hold (seconds)");
        } else if (std::string(name) == "thermometry") {
            cmd->add_option("--n-m", config.n_m_injected, "Injected phonon occupancy");
        } else if (std::string(name) == "npsd") {
            cmd->add_option("--power-uw", config.power_uw, "Pump power at the chip in microwatts");
        } else if (std::string(name) == "sweep") {
            cmd->add_option("--sweep-key", config.sweep_key, "Config key to sweep");
            cmd->add_option("--sweep-cmd", config.sweep_cmd, "Subcommand to rerun per value");
            cmd->add_option("--sweep-values", config.sweep_values, "Values to sweep")->delimiter(',');
        }
    }

    CLI11_PARSE(app, argc, argv);

    if (replay_path.empty()) {
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return 2;
        }
        config.subcommand = app.get_subcommands().front()->get_name();
    }
    if (seed_value >= 0.0) {
        config.has_seed = true;
        config.seed = static_cast<std::uint64_t>(seed_value);
    }
    return dispatch(config, replay_path);
}
