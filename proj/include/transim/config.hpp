// config.hpp — Profile loading: the device.toml schema, the bundled
// paper_device profile, and CLI overrides.

#pragma once

#include <string>
#include <vector>

#include "transim/analytics.hpp"
#include "transim/device.hpp"
#include "transim/environment.hpp"
#include "transim/lindblad.hpp"
#include "transim/protocol.hpp"
#include "transim/toml.hpp"

namespace transim {

struct Profile {
    std::string name;
    DeviceParams device;
    DetectionChain chain;
    SequenceParams sequence;
    HeatingModel heating;
    QpModel qp;
    double qp_tau_vortex = 0.0;  // s, lifetime after vortex trapping
    SimOptions sim;
    toml::Table raw;  // resolved tree, recorded in run manifests

    QpModel qp_vortex() const {
        QpModel model = qp;
        model.tau_qp = qp_tau_vortex;
        return model;
    }
    void validate() const;
};

// Bundled profile encoding the measured device of the transduction demo.
extern const char kPaperDeviceToml[];

// Build a profile from a parsed table (Hz/s units on the wire, angular
// internally). Unknown profile fields are ignored; missing required fields
// raise SchemaError with the dotted path.
Profile profile_from_table(toml::Table table);

// Resolve `paper_device` to the bundled profile, anything else to a file
// path; then apply key=value overrides in order.
Profile load_profile(const std::string& name_or_path, const std::vector<std::string>& overrides = {});

// Merge [sequence] keys from a separate sequence.toml into the profile.
void apply_sequence_file(Profile& profile, const std::string& path);

// Re-fit the heating rate so the thermometer-weighted mean occupancy over
// the profile's readout window equals `target`; returns the fitted
// gamma_p_per_photon without mutating the profile.
double calibrate_profile_heating(const Profile& profile, double target, double tau_ro);

}  // namespace transim
