#include "transim/run.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "transim/csv.hpp"
#include "transim/integrator.hpp"
#include "transim/parallel.hpp"
#include "transim/relations.hpp"

namespace transim {

namespace fs = std::filesystem;
using nlohmann::json;

nlohmann::json table_to_json(const toml::Table& table) {
    json out = json::object();
    for (const auto& [key, value] : table) {
        if (value.is_table()) {
            out[key] = table_to_json(value.as_table());
        } else if (value.is_array()) {
            json arr = json::array();
            for (const auto& item : value.as_array()) {
                if (item.is_table()) {
                    arr.push_back(table_to_json(item.as_table()));
                } else if (item.is_number()) {
                    arr.push_back(item.as_number());
                } else if (item.is_bool()) {
                    arr.push_back(item.as_bool());
                } else {
                    arr.push_back(item.as_string());
                }
            }
            out[key] = arr;
        } else if (value.is_number()) {
            out[key] = value.as_number();
        } else if (value.is_bool()) {
            out[key] = value.as_bool();
        } else {
            out[key] = value.as_string();
        }
    }
    return out;
}

toml::Table json_to_table(const nlohmann::json& node) {
    toml::Table table;
    for (const auto& [key, value] : node.items()) {
        if (value.is_object()) {
            toml::Value entry = toml::Value::table();
            entry.as_table() = json_to_table(value);
            table.insert_or_assign(key, entry);
        } else if (value.is_array()) {
            toml::Array arr;
            for (const auto& item : value) {
                if (item.is_object()) {
                    toml::Value entry = toml::Value::table();
                    entry.as_table() = json_to_table(item);
                    arr.push_back(entry);
                } else if (item.is_boolean()) {
                    arr.push_back(toml::Value(item.get<bool>()));
                } else if (item.is_string()) {
                    arr.push_back(toml::Value(item.get<std::string>()));
                } else {
                    arr.push_back(toml::Value(item.get<double>()));
                }
            }
            table.insert_or_assign(key, toml::Value(std::move(arr)));
        } else if (value.is_boolean()) {
            table.insert_or_assign(key, toml::Value(value.get<bool>()));
        } else if (value.is_string()) {
            table.insert_or_assign(key, toml::Value(value.get<std::string>()));
        } else {
            table.insert_or_assign(key, toml::Value(value.get<double>()));
        }
    }
    return table;
}

namespace {

struct RunContext {
    const RunConfig& config;
    Profile profile;
    RunResult result;

    std::string artifact_path(const std::string& name) const {
        return (fs::path(config.out_dir) / name).string();
    }
    void write_csv(const CsvWriter& csv, const std::string& name) {
        if (!config.emit_artifacts) return;
        const std::string path = artifact_path(name);
        csv.write(path);
        result.artifacts.push_back(path);
    }
    void write_json(const json& doc, const std::string& name) {
        if (!config.emit_artifacts) return;
        const std::string path = artifact_path(name);
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + path);
        file << doc.dump(2) << "\n";
        result.artifacts.push_back(path);
    }
};

std::uint64_t require_seed(const RunConfig& config) {
    if (!config.has_seed) {
        throw SchemaError("seed", "Monte Carlo subcommands require --seed for reproducibility");
    }
    return config.seed;
}

std::uint64_t require_trials(const RunConfig& config) {
    if (!(config.trials >= 1.0) || config.trials > 9e15) {
        throw SchemaError("trials", "trial count must be in [1, 9e15]");
    }
    return static_cast<std::uint64_t>(config.trials);
}

std::vector<double> scan_grid(const RunConfig& config, double from, double to, int points) {
    const double lo = config.scan_from >= 0.0 ? config.scan_from : from;
    const double hi = config.scan_to >= 0.0 ? config.scan_to : to;
    const int n = config.scan_points > 1 ? config.scan_points : points;
    return linspace(lo, hi, static_cast<std::size_t>(n));
}

json interval_json(const ValueWithCi& v) {
    return json{{"value", v.value}, {"ci_lo", v.ci.lo}, {"ci_hi", v.ci.hi}};
}

// --- validate ---------------------------------------------------------------

void run_validate(RunContext& ctx) {
    json checks = json::array();
    checks.push_back({{"check", "schema"}, {"status", "pass"}});
    ctx.profile.validate();
    checks.push_back({{"check", "device_invariants"}, {"status", "pass"}});
    const MechMode& mode = ctx.profile.device.transduction_mode();
    checks.push_back({{"check", "resolved_sideband"},
                      {"status", "pass"},
                      {"omega_m_hz", hz_from_rad(mode.omega)},
                      {"kappa_o_hz", hz_from_rad(ctx.profile.device.optical.kappa_o())}});
    checks.push_back({{"check", "t2_bound"},
                      {"status", "pass"},
                      {"t2_star_ns", ctx.profile.device.qubit.t2_star * 1e9},
                      {"t1_ns", ctx.profile.device.qubit.t1 * 1e9}});
    ctx.result.summary["checks"] = checks;
    ctx.result.summary["profile"] = ctx.profile.name;
}

// --- rabi -------------------------------------------------------------------

void run_rabi(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const double omega =
        ctx.config.omega_hz > 0.0 ? rad_from_hz(ctx.config.omega_hz) : p.sequence.rabi_omega();
    const std::vector<double> durations = scan_grid(ctx.config, 0.0, 256e-9, 129);

    const RabiScan scan = rabi_scan(p.device, p.sequence, omega, durations, p.sim);

    CsvWriter csv({"duration_ns", "p_e"});
    for (std::size_t i = 0; i < scan.durations.size(); ++i) {
        csv.add_row({scan.durations[i] * 1e9, scan.p_e[i]});
    }
    ctx.write_csv(csv, "rabi.csv");

    ctx.result.summary["omega_hz"] = hz_from_rad(omega);
    if (scan.fit) {
        ctx.result.summary["pi_time_ns"] = scan.pi_time() * 1e9;
        ctx.result.summary["period_ns"] = scan.period() * 1e9;
    } else {
        ctx.result.summary["fit"] = "no usable contrast";
    }
}

// --- swap -------------------------------------------------------------------

void run_swap(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::vector<double> holds = scan_grid(ctx.config, 0.0, 560e-9, 141);
    const VacuumRabiScan scan = vacuum_rabi_scan(p.device, p.sequence, holds, p.sim);

    CsvWriter csv({"hold_ns", "p_e", "n_m"});
    for (std::size_t i = 0; i < scan.holds.size(); ++i) {
        csv.add_row({scan.holds[i] * 1e9, scan.p_e[i], scan.n_m[i]});
    }
    ctx.write_csv(csv, "swap.csv");

    if (scan.fit) {
        ctx.result.summary["oscillation_mhz"] = scan.fit->frequency * 1e-6;
    }
    const SwapEfficiency eff = swap_efficiency(p.device, p.sequence, p.sim);
    ctx.result.summary["eta_swap"] = eff.eta_swap;
    ctx.result.summary["t_swap_ns"] = eff.t_swap * 1e9;

    if (ctx.config.trace_hold >= 0.0) {
        PulseSequence pulses;
        pulses.append(make_stark_segment(p.sequence.stark_shift, ctx.config.trace_hold,
                                         p.sequence.stark_rise, p.sequence.stark_fall));
        const LindbladModel model = build_model(p.device, pulses, CavityMode::eliminated, p.sim);
        const DensityMatrix rho0 = product_state(model.ops, 1.0, 0);
        const auto grid = linspace(0.0, model.duration, 257);
        const auto traj = evolve(model, rho0, grid, p.sim);
        CsvWriter trace({"t_ns", "p_e", "n_m", "trace_error"});
        for (std::size_t i = 0; i < traj.size(); ++i) {
            trace.add_row({grid[i] * 1e9, expectation(traj[i], model.ops.sigma_ee),
                           expectation(traj[i], model.ops.n_mech), traj[i].trace_error()});
        }
        ctx.write_csv(trace, "swap_trace.csv");
    }
}

// --- phonon-t1 / ramsey -------------------------------------------------------

void run_phonon_t1(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::vector<double> delays = scan_grid(ctx.config, 0.0, 1.2e-6, 121);
    const PhononT1Result result = phonon_t1(p.device, p.sequence, delays, p.sim);

    CsvWriter csv({"delay_ns", "p_e"});
    for (std::size_t i = 0; i < result.delays.size(); ++i) {
        csv.add_row({result.delays[i] * 1e9, result.p_e[i]});
    }
    ctx.write_csv(csv, "phonon_t1.csv");
    ctx.result.summary["t1_m_ns"] = result.t1 * 1e9;
    ctx.result.summary["lower_bound"] = result.lower_bound;
}

void run_ramsey(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::vector<double> delays = scan_grid(ctx.config, 0.0, 1.5e-6, 151);
    const RamseyResult result = ramsey(p.device, p.sequence, delays, p.sim);

    CsvWriter csv({"delay_ns", "p_e"});
    for (std::size_t i = 0; i < result.delays.size(); ++i) {
        csv.add_row({result.delays[i] * 1e9, result.p_e[i]});
    }
    ctx.write_csv(csv, "ramsey.csv");
    ctx.result.summary["t2_star_ns"] = result.t2_star * 1e9;
    ctx.result.summary["fringe_mhz"] = result.fringe_frequency * 1e-6;
}

// --- spectrum / npsd ----------------------------------------------------------

void run_spectrum(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::vector<double> flux = scan_grid(ctx.config, 0.10, 0.28, 301);
    const AvoidedCrossing result = avoided_crossing(p.device, flux);

    std::vector<std::string> header{"flux_ratio", "f_q_hz"};
    for (std::size_t b = 0; b < result.branches_hz.front().size(); ++b) {
        header.push_back("branch_" + std::to_string(b) + "_hz");
    }
    CsvWriter csv(header);
    for (std::size_t i = 0; i < flux.size(); ++i) {
        std::vector<double> row{result.flux_ratio[i], result.f_qubit_hz[i]};
        row.insert(row.end(), result.branches_hz[i].begin(), result.branches_hz[i].end());
        csv.add_row(row);
    }
    ctx.write_csv(csv, "spectrum.csv");

    // Minimum splitting around the transduction mode.
    double min_split = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < flux.size(); ++i) {
        for (std::size_t b = 1; b < result.branches_hz[i].size(); ++b) {
            min_split = std::min(min_split, result.branches_hz[i][b] - result.branches_hz[i][b - 1]);
        }
    }
    ctx.result.summary["min_splitting_mhz"] = min_split * 1e-6;
}

void run_npsd(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const double n_c = p.device.optical.n_c_per_uw * ctx.config.power_uw;
    const std::vector<double> grid = scan_grid(ctx.config, 5.10e9, 5.32e9, 2201);
    std::vector<double> omega(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) omega[i] = rad_from_hz(grid[i]);
    const auto spectrum = thermal_npsd(p.device, omega, n_c);

    CsvWriter csv({"omega_ghz", "s"});
    for (const NpsdPoint& point : spectrum) {
        csv.add_row({hz_from_rad(point.omega) * 1e-9, point.value});
    }
    ctx.write_csv(csv, "npsd.csv");
    ctx.result.summary["n_c"] = n_c;
    ctx.result.summary["power_uw"] = ctx.config.power_uw;
}

// --- thermometry ---------------------------------------------------------------

// Matched red/blue fluxes at constant occupancy through the profile's
// readout envelope and chain calibration.
std::pair<FluxSeries, FluxSeries> thermometry_fluxes(const Profile& p, double n_m) {
    const TransductionTrace trace =
        vacuum_readout(p.device, p.sequence, p.chain, p.heating, p.sequence.readout_window, 0.0);
    const double eta_chain = p.device.optical.eta_kappa() * p.chain.eta_sys();
    FluxSeries red, blue;
    red.window = blue.window = p.sequence.readout_window;
    red.rate.resize(trace.t.size());
    blue.rate.resize(trace.t.size());
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
        const double per_phonon = trace.calibration_scale * eta_chain * trace.gamma_om[i];
        red.rate[i] = p.chain.dark_rate + per_phonon * n_m;
        blue.rate[i] = p.chain.dark_rate + per_phonon * (n_m + 1.0);
    }
    return {red, blue};
}

void run_thermometry(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::uint64_t seed = require_seed(ctx.config);
    const std::uint64_t trials = require_trials(ctx.config);

    const auto [red_flux, blue_flux] = thermometry_fluxes(p, ctx.config.n_m_injected);
    std::vector<std::string> warnings;
    const CountRecord red = simulate_counts(red_flux, trials, seed, 0, &warnings);
    const CountRecord blue = simulate_counts(blue_flux, trials, seed, 1, &warnings);
    const ThermometryResult result = sideband_asymmetry(red, blue, p.chain.dark_rate);

    CsvWriter csv({"is_blue", "trials", "detected", "rate"});
    csv.add_row({0.0, static_cast<double>(red.trials), static_cast<double>(red.detected), red.rate()});
    csv.add_row({1.0, static_cast<double>(blue.trials), static_cast<double>(blue.detected), blue.rate()});
    ctx.write_csv(csv, "thermometry.csv");

    ctx.result.summary["n_m_injected"] = ctx.config.n_m_injected;
    ctx.result.summary["p_d"] = interval_json(result.p_d);
    ctx.result.summary["n_m"] = interval_json(result.n_m);
    ctx.result.summary["warnings"] = warnings;
}

// --- heating / qp ---------------------------------------------------------------

void run_heating(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::vector<double> windows = scan_grid(ctx.config, 2e-9, 120e-9, 60);

    CsvWriter csv({"tau_ns", "mean_occupancy", "eta_ro"});
    std::vector<std::vector<double>> rows(windows.size());
    parallel_for_index(windows.size(), [&](std::size_t i) {
        const TransductionTrace trace =
            vacuum_readout(p.device, p.sequence, p.chain, p.heating, windows[i]);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 1; k < trace.t.size(); ++k) {
            const double dt = trace.t[k] - trace.t[k - 1];
            num += 0.5 * dt * (trace.gamma_om[k - 1] * trace.n_m[k - 1] + trace.gamma_om[k] * trace.n_m[k]);
            den += 0.5 * dt * (trace.gamma_om[k - 1] + trace.gamma_om[k]);
        }
        rows[i] = {windows[i] * 1e9, den > 0.0 ? num / den : 0.0, trace.eta_ro_detected};
    });
    for (const auto& row : rows) csv.add_row(row);
    ctx.write_csv(csv, "heating.csv");

    const TransductionTrace anchor =
        vacuum_readout(p.device, p.sequence, p.chain, p.heating, p.sequence.readout_window);
    ctx.result.summary["eta_ro_at_window"] = anchor.eta_ro_detected;
}

void run_qp(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::vector<double> delays = scan_grid(ctx.config, 0.0, 12e-3, 121);
    const std::vector<double> base = qp_recovery(p.qp, delays);
    const std::vector<double> vortex = qp_recovery(p.qp_vortex(), delays);

    CsvWriter csv({"delay_ms", "contrast", "contrast_vortex"});
    for (std::size_t i = 0; i < delays.size(); ++i) {
        csv.add_row({delays[i] * 1e3, base[i], vortex[i]});
    }
    ctx.write_csv(csv, "qp.csv");

    const double recovery = qp_recovery_time(p.qp);
    const double recovery_vortex = qp_recovery_time(p.qp_vortex());
    const double sequence_span = p.sequence.swap_hold + p.sequence.readout_window + p.sequence.pi_time;
    const RepetitionBudget budget = repetition_budget(sequence_span, true, p.qp);
    ctx.result.summary["recovery_ms"] = recovery * 1e3;
    ctx.result.summary["recovery_vortex_ms"] = recovery_vortex * 1e3;
    ctx.result.summary["speedup"] = recovery / recovery_vortex;
    ctx.result.summary["max_rate_hz"] = budget.max_rate;
    ctx.result.summary["configured_rate_hz"] = 1.0 / p.sequence.repetition_period;
}

// --- transduce / optical-rabi ----------------------------------------------------

void run_transduce(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::uint64_t seed = require_seed(ctx.config);
    const std::uint64_t trials = require_trials(ctx.config);
    const QpModel qp = p.qp;

    const TransductionTrace with_pi = transduction_sequence(
        p.device, p.sequence, p.chain, p.heating, p.sequence.pi_time, p.sequence.readout_window, p.sim, &qp);
    const TransductionTrace without_pi = transduction_sequence(
        p.device, p.sequence, p.chain, p.heating, 0.0, p.sequence.readout_window, p.sim, &qp);

    std::vector<std::string> warnings = with_pi.warnings;
    const CountRecord counts_pi = simulate_counts(with_pi.red_flux, trials, seed, 0, &warnings);
    const CountRecord counts_0 = simulate_counts(without_pi.red_flux, trials, seed, 1, &warnings);
    const TransductionResult estimate = transduction_estimate(counts_pi, counts_0);

    CsvWriter csv({"with_pi", "trials", "detected", "rate"});
    csv.add_row({1.0, static_cast<double>(counts_pi.trials), static_cast<double>(counts_pi.detected),
                 counts_pi.rate()});
    csv.add_row({0.0, static_cast<double>(counts_0.trials), static_cast<double>(counts_0.detected),
                 counts_0.rate()});
    ctx.write_csv(csv, "transduce.csv");

    json summary;
    summary["p_pi"] = interval_json(estimate.p_pi);
    summary["p_0"] = interval_json(estimate.p_0);
    summary["eta_t"] = interval_json(estimate.eta_t);
    summary["n_add"] = interval_json(estimate.n_add);
    summary["significant"] = estimate.significant;
    summary["occupancy_at_readout"] = with_pi.occupancy_at_readout;
    summary["eta_ro_detected"] = with_pi.eta_ro_detected;
    summary["warnings"] = warnings;
    ctx.result.summary = summary;
    ctx.write_json(summary, "transduce_summary.json");
}

void run_optical_rabi(RunContext& ctx) {
    const Profile& p = ctx.profile;
    const std::uint64_t seed = require_seed(ctx.config);
    const std::uint64_t trials = require_trials(ctx.config);

    const double rabi_period = 2.0 * p.sequence.pi_time;
    const std::vector<double> durations = scan_grid(ctx.config, 0.0, 2.0 * rabi_period, 17);

    std::vector<CountRecord> counts(durations.size());
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < durations.size(); ++i) {
        const TransductionTrace trace = transduction_sequence(
            p.device, p.sequence, p.chain, p.heating, durations[i], p.sequence.readout_window, p.sim);
        counts[i] = simulate_counts(trace.red_flux, trials, seed, static_cast<std::uint32_t>(i), &warnings);
    }

    const OpticalRabiFit fit = optical_rabi_fit(durations, counts, rabi_period);

    CsvWriter csv({"duration_ns", "rate", "ci_lo", "ci_hi"});
    for (std::size_t i = 0; i < durations.size(); ++i) {
        const Interval ci = wilson_interval(counts[i].detected, counts[i].trials);
        csv.add_row({durations[i] * 1e9, counts[i].rate(), ci.lo, ci.hi});
    }
    ctx.write_csv(csv, "optical_rabi.csv");

    ctx.result.summary["background"] =
        json{{"value", fit.background}, {"ci_lo", fit.background_ci.lo}, {"ci_hi", fit.background_ci.hi}};
    ctx.result.summary["maximum"] =
        json{{"value", fit.maximum}, {"ci_lo", fit.maximum_ci.lo}, {"ci_hi", fit.maximum_ci.hi}};
    ctx.result.summary["period_ns"] = rabi_period * 1e9;
    ctx.result.summary["warnings"] = warnings;
}

// --- sweep -----------------------------------------------------------------------

void run_sweep(RunContext& ctx);

RunResult run_impl(const RunConfig& config);

void run_sweep(RunContext& ctx) {
    if (ctx.config.sweep_key.empty() || ctx.config.sweep_cmd.empty() || ctx.config.sweep_values.empty()) {
        throw SchemaError("sweep", "sweep requires --sweep-key, --sweep-cmd, and --sweep-values");
    }
    static const std::map<std::string, std::string> kScalar = {
        {"rabi", "pi_time_ns"},       {"swap", "eta_swap"},        {"phonon-t1", "t1_m_ns"},
        {"ramsey", "t2_star_ns"},     {"heating", "eta_ro_at_window"},
        {"spectrum", "min_splitting_mhz"},
    };
    const auto scalar = kScalar.find(ctx.config.sweep_cmd);
    if (scalar == kScalar.end()) {
        throw SchemaError("sweep.cmd", "unsupported sweep target '" + ctx.config.sweep_cmd + "'");
    }

    CsvWriter csv({ctx.config.sweep_key, scalar->second});
    json points = json::array();
    for (double value : ctx.config.sweep_values) {
        RunConfig sub = ctx.config;
        sub.subcommand = ctx.config.sweep_cmd;
        sub.emit_artifacts = false;
        sub.sweep_key.clear();
        sub.sweep_cmd.clear();
        sub.sweep_values.clear();
        sub.overrides.push_back(ctx.config.sweep_key + "=" + format_value(value));
        const RunResult sub_result = run_impl(sub);
        const double y = sub_result.summary.at(scalar->second).get<double>();
        csv.add_row({value, y});
        points.push_back({{"value", value}, {scalar->second, y}});
    }
    ctx.write_csv(csv, "sweep.csv");
    ctx.result.summary["points"] = points;
    ctx.result.summary["key"] = ctx.config.sweep_key;
    ctx.result.summary["cmd"] = ctx.config.sweep_cmd;
}

// --- dispatcher --------------------------------------------------------------------

json config_to_json(const RunConfig& config) {
    json out;
    out["subcommand"] = config.subcommand;
    out["profile"] = config.profile;
    out["sequence_file"] = config.sequence_file;
    out["out_dir"] = config.out_dir;
    out["overrides"] = config.overrides;
    out["has_seed"] = config.has_seed;
    out["seed"] = config.seed;
    out["trials"] = config.trials;
    out["omega_hz"] = config.omega_hz;
    out["scan_from"] = config.scan_from;
    out["scan_to"] = config.scan_to;
    out["scan_points"] = config.scan_points;
    out["n_m_injected"] = config.n_m_injected;
    out["power_uw"] = config.power_uw;
    out["trace_hold"] = config.trace_hold;
    out["sweep_key"] = config.sweep_key;
    out["sweep_cmd"] = config.sweep_cmd;
    out["sweep_values"] = config.sweep_values;
    return out;
}

RunConfig config_from_json(const json& doc) {
    RunConfig config;
    config.subcommand = doc.at("subcommand").get<std::string>();
    config.profile = doc.at("profile").get<std::string>();
    config.sequence_file = doc.value("sequence_file", std::string{});
    config.out_dir = doc.value("out_dir", std::string{"."});
    config.overrides = doc.value("overrides", std::vector<std::string>{});
    config.has_seed = doc.value("has_seed", false);
    config.seed = doc.value("seed", 0ull);
    config.trials = doc.value("trials", 1e6);
    config.omega_hz = doc.value("omega_hz", 0.0);
    config.scan_from = doc.value("scan_from", -1.0);
    config.scan_to = doc.value("scan_to", -1.0);
    config.scan_points = doc.value("scan_points", 0);
    config.n_m_injected = doc.value("n_m_injected", 0.64);
    config.power_uw = doc.value("power_uw", 20.0);
    config.trace_hold = doc.value("trace_hold", -1.0);
    config.sweep_key = doc.value("sweep_key", std::string{});
    config.sweep_cmd = doc.value("sweep_cmd", std::string{});
    config.sweep_values = doc.value("sweep_values", std::vector<double>{});
    return config;
}

RunResult run_impl(const RunConfig& config) {
    RunContext ctx{config, load_profile(config.profile, config.overrides), RunResult{}};
    if (!config.sequence_file.empty()) apply_sequence_file(ctx.profile, config.sequence_file);
    if (config.emit_artifacts) fs::create_directories(config.out_dir);

    if (config.subcommand == "validate") {
        run_validate(ctx);
    } else if (config.subcommand == "rabi") {
        run_rabi(ctx);
    } else if (config.subcommand == "swap") {
        run_swap(ctx);
    } else if (config.subcommand == "phonon-t1") {
        run_phonon_t1(ctx);
    } else if (config.subcommand == "ramsey") {
        run_ramsey(ctx);
    } else if (config.subcommand == "spectrum") {
        run_spectrum(ctx);
    } else if (config.subcommand == "npsd") {
        run_npsd(ctx);
    } else if (config.subcommand == "thermometry") {
        run_thermometry(ctx);
    } else if (config.subcommand == "heating") {
        run_heating(ctx);
    } else if (config.subcommand == "qp") {
        run_qp(ctx);
    } else if (config.subcommand == "transduce") {
        run_transduce(ctx);
    } else if (config.subcommand == "optical-rabi") {
        run_optical_rabi(ctx);
    } else if (config.subcommand == "sweep") {
        run_sweep(ctx);
    } else {
        throw SchemaError("subcommand", "unknown subcommand '" + config.subcommand + "'");
    }

    if (config.emit_artifacts) {
        json manifest;
        manifest["config"] = config_to_json(config);
        manifest["resolved_profile"] = table_to_json(ctx.profile.raw);
        manifest["threads"] = max_threads();
        manifest["artifacts"] = ctx.result.artifacts;
        manifest["summary"] = ctx.result.summary;
        ctx.write_json(manifest, config.subcommand + "_manifest.json");
    }
    return ctx.result;
}

}  // namespace

RunResult run(const RunConfig& config) { return run_impl(config); }

RunResult replay(const std::string& manifest_path) {
    std::ifstream file(manifest_path);
    if (!file) throw SchemaError(manifest_path, "cannot open manifest");
    json manifest;
    file >> manifest;
    RunConfig config = config_from_json(manifest.at("config"));
    return run_impl(config);
}

}  // namespace transim
