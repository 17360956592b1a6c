// device.hpp — Device parameters and their validity rules.
//
// All rates stored here are angular (rad/s); see units.hpp. The struct
// layout mirrors the device.toml schema, with Hz-to-rad conversion done by
// the config loader.

#pragma once

#include <string>
#include <vector>

#include "transim/common.hpp"
#include "transim/units.hpp"

namespace transim {

// One hybridized acoustic mode. The first entry of DeviceParams::mech_modes
// is the transduction mode; spectator modes default to g_pe = 0.
struct MechMode {
    double omega = 0.0;      // rad/s
    double g_om = 0.0;       // rad/s, vacuum optomechanical coupling
    double g_pe = 0.0;       // rad/s, vacuum piezoelectric coupling
    double kappa_i = 0.0;    // rad/s, spectroscopic intrinsic linewidth
    double t1 = 0.0;         // s, energy decay time
    double occupancy = 1.0;  // thermal occupancy weight used by the NPSD

    // Energy decay rate; distinct from kappa_i when the mode suffers
    // spectral diffusion.
    double kappa_t1() const { return 1.0 / t1; }
};

struct QubitParams {
    double e_j_hz = 0.0;        // Josephson energy, ordinary Hz
    double e_c_hz = 0.0;        // charging energy, ordinary Hz
    double t1 = 0.0;            // s
    double t2_star = 0.0;       // s
    double kappa_e = 0.0;       // rad/s, direct CPW coupling
    double kappa_e_fig2 = 0.0;  // rad/s, alternate published value (stored only)
    double park_offset = 0.0;   // rad/s, idle detuning from the transduction mode
    // Dispersive readout resonator parameters, stored but not simulated.
    double f_ro_hz = 0.0;
    double g_ro_hz = 0.0;
    double kappa_ro_hz = 0.0;

    // White-noise pure dephasing rate implied by (T1, T2*).
    double pure_dephasing() const { return 1.0 / t2_star - 0.5 / t1; }
};

struct OpticalParams {
    double omega_c = 0.0;     // rad/s, cavity frequency
    double kappa_i = 0.0;     // rad/s
    double kappa_e = 0.0;     // rad/s
    double n_c_per_uw = 0.0;  // intracavity photons per microwatt of pump

    double kappa_o() const { return kappa_i + kappa_e; }
    // Cavity-to-waveguide collection efficiency.
    double eta_kappa() const { return kappa_e / kappa_o(); }
};

struct DeviceParams {
    QubitParams qubit;
    std::vector<MechMode> mech_modes;
    OpticalParams optical;
    double t_fridge = 0.0;  // K

    const MechMode& transduction_mode() const { return mech_modes.front(); }
    double g_pe() const { return transduction_mode().g_pe; }

    // Fridge occupancy at the transduction-mode frequency (~1e-7 at 15 mK).
    double n_fridge() const { return bose_occupancy(transduction_mode().omega, t_fridge); }

    // Throws SchemaError (field path) for malformed values and ValidityError
    // for physically inadmissible ones.
    void validate() const;
};

}  // namespace transim
