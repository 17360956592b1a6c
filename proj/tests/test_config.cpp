#include "doctest.h"

#include <fstream>
#include <sstream>

#include "transim/config.hpp"

using namespace transim;

TEST_CASE("bundled profile loads and validates") {
    const Profile p = load_profile("paper_device");
    CHECK(p.name == "paper_device");
    CHECK(p.device.mech_modes.size() == 4);
    CHECK(hz_from_rad(p.device.g_pe()) == doctest::Approx(2.24e6));
    CHECK(hz_from_rad(p.device.mech_modes[0].omega) == doctest::Approx(5.1588e9));
    CHECK(hz_from_rad(p.device.optical.kappa_o()) == doctest::Approx(1.61e9));
    CHECK(p.device.qubit.t1 == doctest::Approx(522e-9));
    CHECK(p.chain.eta_sys() == doctest::Approx(0.015));
    CHECK(p.chain.dark_rate == doctest::Approx(10.0));
    CHECK(p.sequence.envelope_factor == doctest::Approx(0.27));
    CHECK(p.qp.tau_qp == doctest::Approx(1.5e-3));
    CHECK(p.qp_tau_vortex == doctest::Approx(320e-6));
    // Both published CPW couplings are kept; the Methods value is the default.
    CHECK(hz_from_rad(p.device.qubit.kappa_e) == doctest::Approx(120e3));
    CHECK(hz_from_rad(p.device.qubit.kappa_e_fig2) == doctest::Approx(100e3));
}

TEST_CASE("bundled profile matches the file shipped in profiles/") {
    const std::string path = std::string(TRANSIM_SOURCE_DIR) + "/profiles/paper_device.toml";
    std::ifstream file(path);
    REQUIRE(file.good());
    std::ostringstream text;
    text << file.rdbuf();
    CHECK(text.str() == std::string(kPaperDeviceToml));
}

TEST_CASE("negative coupling is rejected with a field path") {
    CHECK_THROWS_WITH_AS(load_profile("paper_device", {"optical.kappa_e_hz=-1.0"}),
                         doctest::Contains("optical.kappa_e_hz"), SchemaError);
}

TEST_CASE("unresolved-sideband devices are rejected") {
    // Mechanical mode far below the cavity linewidth.
    CHECK_THROWS_AS(load_profile("paper_device", {"mech_modes.omega_hz=0.5e9"}), ValidityError);
}

TEST_CASE("coherence bound T2* <= 2 T1 is enforced") {
    CHECK_THROWS_AS(load_profile("paper_device", {"qubit.t2_star_s=1.2e-6"}), ValidityError);
}

TEST_CASE("overrides reach nested fields") {
    const Profile p = load_profile("paper_device", {"qubit.t1_s=1e-6", "sequence.n_c_peak=22"});
    CHECK(p.device.qubit.t1 == doctest::Approx(1e-6));
    CHECK(p.sequence.n_c_peak == doctest::Approx(22.0));
    CHECK_THROWS_AS(load_profile("paper_device", {"novalue"}), SchemaError);
}

TEST_CASE("chain efficiency override cannot exceed its factors") {
    CHECK_THROWS_WITH_AS(load_profile("paper_device", {"chain.eta_sys_measured=0.05"}),
                         doctest::Contains("eta_sys"), SchemaError);
}

TEST_CASE("sequence file merges over the profile") {
    const std::string path = "/tmp/transim_test_sequence.toml";
    {
        std::ofstream file(path);
        file << "[sequence]\npi_time_s = 40e-9\nswap_hold_s = 104e-9\n";
    }
    Profile p = load_profile("paper_device");
    apply_sequence_file(p, path);
    CHECK(p.sequence.pi_time == doctest::Approx(40e-9));
    CHECK(p.sequence.swap_hold == doctest::Approx(104e-9));
    // Untouched sections survive the merge.
    CHECK(p.device.mech_modes.size() == 4);
}
