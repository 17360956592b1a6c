// lindblad.hpp — Time-dependent Lindblad model of the driven tripartite
// system.
//
// The model lives in the frame co-rotating at the transduction-mode
// frequency for qubit and phonon, and at the red-sideband drive for the
// optical mode. The static Hamiltonian carries the parked qubit detuning and
// the piezoelectric exchange; drives, Stark shifts, and the pump envelope
// enter as lazily sampled envelopes. The optical cavity is either retained
// (CavityMode::full) or adiabatically eliminated into a time-dependent
// phonon decay channel whose emissions are the scattered photons.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "transim/density.hpp"
#include "transim/device.hpp"
#include "transim/operators.hpp"
#include "transim/pulse.hpp"

namespace transim {

enum class CavityMode { full, eliminated };

struct SimOptions {
    double max_dt = 0.2e-9;   // s, integrator step ceiling
    int n_m_levels = 4;
    int n_o_levels = 4;       // used only in full-cavity mode
    int dim_ceiling = 512;
    int check_every = 1;      // invariant checks every N internal steps
    InvariantTolerances tolerances;
    // Detection-path scaling of the intracavity photon number, absorbing the
    // measured turn-on correction of the optical pulse (see analytics).
    double envelope_factor = 1.0;
};

// f(t) * op, plus the Hermitian conjugate when conjugate_pair is set.
struct HamiltonianTerm {
    Matrix op;
    std::function<Complex(double)> envelope;
    bool conjugate_pair = false;
};

// Collapse operator with rate = rate * rate_envelope(t) (envelope optional).
struct CollapseChannel {
    Matrix op;
    double rate = 0.0;  // 1/s
    std::function<double(double)> rate_envelope;  // nullptr means constant
    Matrix op_dag_op;   // cached op^dag * op

    double rate_at(double t) const { return rate_envelope ? rate * rate_envelope(t) : rate; }
};

struct LindbladModel {
    OperatorSet ops;
    Matrix h_static;
    std::vector<HamiltonianTerm> terms;
    std::vector<CollapseChannel> channels;
    CavityMode cavity = CavityMode::eliminated;
    double duration = 0.0;  // s, pulse-sequence span

    // Effective back-action rate seen by the detection path (zero outside
    // readout segments); populated in both cavity modes.
    std::function<double(double)> gamma_om;

    // H(t) assembled into `out` (preallocated to dim x dim).
    void hamiltonian_at(double t, Matrix& out) const;
};

// Assemble the model for a device and pulse sequence. Throws ValidityError
// when the eliminated mode is requested outside its adiabatic regime
// (4 G_om > kappa_o at peak) and checks every envelope for finiteness over
// the sequence window.
LindbladModel build_model(const DeviceParams& params, const PulseSequence& seq, CavityMode mode,
                          const SimOptions& options = {});

}  // namespace transim
