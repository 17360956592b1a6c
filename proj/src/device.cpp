#include "transim/device.hpp"

#include <string>

namespace transim {

namespace {

void require_positive(double value, const std::string& field) {
    if (!(value > 0.0)) throw SchemaError(field, "must be strictly positive");
}

}  // namespace

void DeviceParams::validate() const {
    if (mech_modes.empty()) throw SchemaError("mech_modes", "need at least one mechanical mode");

    require_positive(qubit.e_j_hz, "qubit.e_j_hz");
    require_positive(qubit.e_c_hz, "qubit.e_c_hz");
    require_positive(qubit.t1, "qubit.t1_s");
    require_positive(qubit.t2_star, "qubit.t2_star_s");
    if (qubit.kappa_e < 0.0) throw SchemaError("qubit.kappa_e_hz", "must be non-negative");
    if (qubit.t2_star > 2.0 * qubit.t1 + 1e-18) {
        throw ValidityError("qubit coherence violates T2* <= 2 T1");
    }

    require_positive(optical.omega_c, "optical.omega_c");
    require_positive(optical.kappa_i, "optical.kappa_i_hz");
    require_positive(optical.kappa_e, "optical.kappa_e_hz");

    for (std::size_t i = 0; i < mech_modes.size(); ++i) {
        const std::string prefix = "mech_modes[" + std::to_string(i) + "].";
        const MechMode& mode = mech_modes[i];
        require_positive(mode.omega, prefix + "omega_hz");
        require_positive(mode.t1, prefix + "t1_s");
        require_positive(mode.kappa_i, prefix + "kappa_i_hz");
        if (mode.g_om < 0.0) throw SchemaError(prefix + "g_om_hz", "must be non-negative");
        if (mode.g_pe < 0.0) throw SchemaError(prefix + "g_pe_hz", "must be non-negative");
        if (mode.occupancy < 0.0) throw SchemaError(prefix + "occupancy", "must be non-negative");
    }

    // Sideband-selective readout requires the resolved-sideband regime for
    // every optically coupled mode.
    for (const MechMode& mode : mech_modes) {
        if (mode.g_om > 0.0 && !(mode.omega > optical.kappa_o())) {
            throw ValidityError("resolved-sideband condition violated: mechanical frequency " +
                                std::to_string(hz_from_rad(mode.omega) * 1e-9) +
                                " GHz not above kappa_o = " +
                                std::to_string(hz_from_rad(optical.kappa_o()) * 1e-9) + " GHz");
        }
    }

    if (t_fridge < 0.0) throw SchemaError("fridge.temperature_k", "must be non-negative");
}

}  // namespace transim
