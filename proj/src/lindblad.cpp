#include "transim/lindblad.hpp"

#include <cmath>
#include <string>

#include "transim/relations.hpp"

namespace transim {

namespace {

constexpr Complex kI{0.0, 1.0};

// Per-segment closure binding global time to the local envelope.
struct SegmentWindow {
    double start = 0.0;
    double duration = 0.0;
    bool contains(double t) const { return t >= start && t <= start + duration; }
    double local(double t) const { return t - start; }
};

void check_envelope_finite(const std::function<double(double)>& env, double duration, const char* name) {
    const int samples = 256;
    for (int i = 0; i <= samples; ++i) {
        const double t = duration * i / samples;
        if (!std::isfinite(env(t))) {
            throw ValidityError(std::string("build_model: ") + name + " envelope not finite at t = " +
                                std::to_string(t * 1e9) + " ns");
        }
    }
}

}  // namespace

void LindbladModel::hamiltonian_at(double t, Matrix& out) const {
    out = h_static;
    for (const auto& term : terms) {
        const Complex f = term.envelope(t);
        if (f == Complex{0.0, 0.0}) continue;
        if (term.conjugate_pair) {
            out.noalias() += f * term.op;
            out.noalias() += std::conj(f) * term.op.adjoint();
        } else {
            out.noalias() += f * term.op;
        }
    }
}

LindbladModel build_model(const DeviceParams& params, const PulseSequence& seq, CavityMode mode,
                          const SimOptions& options) {
    params.validate();
    seq.validate();

    const MechMode& mech = params.transduction_mode();
    const double kappa_o = params.optical.kappa_o();

    LindbladModel model;
    model.cavity = mode;
    model.duration = seq.total_duration();
    model.ops = build_operators(options.n_m_levels, mode == CavityMode::full ? options.n_o_levels : 0,
                                options.dim_ceiling);
    const OperatorSet& ops = model.ops;

    // Static part: parked qubit detuning and the resonant piezoelectric
    // exchange. The phonon is the frame reference, so it carries no detuning.
    model.h_static = params.qubit.park_offset * ops.sigma_ee +
                     mech.g_pe * (ops.sigma_eg * ops.b + ops.sigma_ge * ops.b_dag);

    // Optical pump envelope (effective intracavity photons) summed over
    // readout segments; zero elsewhere.
    std::vector<std::pair<SegmentWindow, OpticalReadout>> readouts;
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
        const auto& seg = seq.segments[i];
        const SegmentWindow window{seq.segment_start(i), seg.duration};
        if (const auto* drive = std::get_if<MicrowaveDrive>(&seg.kind)) {
            const MicrowaveDrive d = *drive;
            const double delta_frame = params.qubit.park_offset + d.detuning;
            HamiltonianTerm term;
            term.op = ops.sigma_eg;
            term.conjugate_pair = true;
            term.envelope = [d, window, delta_frame](double t) -> Complex {
                if (!window.contains(t)) return {0.0, 0.0};
                const double amp = 0.5 * drive_envelope(d, window.duration, window.local(t));
                return amp * std::exp(-kI * (delta_frame * t + d.phase));
            };
            model.terms.push_back(std::move(term));
        } else if (const auto* stark = std::get_if<StarkShift>(&seg.kind)) {
            const StarkShift s = *stark;
            HamiltonianTerm term;
            term.op = ops.sigma_ee;
            term.envelope = [s, window](double t) -> Complex {
                if (!window.contains(t)) return {0.0, 0.0};
                return stark_envelope(s, window.duration, window.local(t));
            };
            model.terms.push_back(std::move(term));
        } else if (const auto* readout = std::get_if<OpticalReadout>(&seg.kind)) {
            readouts.emplace_back(window, *readout);
        }
    }

    const double factor = options.envelope_factor;
    auto effective_n_c = [readouts, factor](double t) {
        double n_c = 0.0;
        for (const auto& [window, seg] : readouts) {
            if (window.contains(t)) n_c += factor * readout_envelope(seg, window.duration, window.local(t));
        }
        return n_c;
    };

    double n_c_peak = 0.0;
    for (const auto& [window, seg] : readouts) n_c_peak = std::max(n_c_peak, factor * seg.n_c_peak);

    const double g_om = mech.g_om;
    model.gamma_om = [effective_n_c, g_om, kappa_o](double t) {
        return 4.0 * effective_n_c(t) * g_om * g_om / kappa_o;
    };

    if (mode == CavityMode::full) {
        // Beam-splitter interaction with the pump-enhanced coupling
        // G_om(t) = sqrt(n_c(t)) g_om; the drive is resonant on the red
        // sideband so the photon carries no detuning in this frame.
        HamiltonianTerm term;
        term.op = ops.a_dag * ops.b;
        term.conjugate_pair = true;
        term.envelope = [effective_n_c, g_om](double t) -> Complex {
            return std::sqrt(effective_n_c(t)) * g_om;
        };
        model.terms.push_back(std::move(term));

        CollapseChannel cavity_decay;
        cavity_decay.op = ops.a;
        cavity_decay.rate = kappa_o;
        cavity_decay.op_dag_op = ops.n_opt;
        model.channels.push_back(std::move(cavity_decay));
    } else if (n_c_peak > 0.0) {
        const double g_peak = std::sqrt(n_c_peak) * g_om;
        if (4.0 * g_peak > kappa_o) {
            throw ValidityError("build_model: adiabatic elimination invalid, 4 G_om = " +
                                std::to_string(hz_from_rad(4.0 * g_peak)) + " Hz exceeds kappa_o = " +
                                std::to_string(hz_from_rad(kappa_o)) + " Hz at peak pump power");
        }
        CollapseChannel backaction;
        backaction.op = ops.b;
        backaction.rate = 1.0;  // full time dependence lives in the envelope
        backaction.rate_envelope = model.gamma_om;
        backaction.op_dag_op = ops.n_mech;
        check_envelope_finite(backaction.rate_envelope, model.duration, "back-action");
        model.channels.push_back(std::move(backaction));
    }

    // Intrinsic dissipation. gamma_phi >= 0 is guaranteed by the
    // T2* <= 2 T1 device invariant.
    const double n_f = params.n_fridge();
    const double kappa_m = mech.kappa_t1();

    CollapseChannel qubit_decay;
    qubit_decay.op = ops.sigma_ge;
    qubit_decay.rate = 1.0 / params.qubit.t1;
    qubit_decay.op_dag_op = ops.sigma_ee;
    model.channels.push_back(std::move(qubit_decay));

    const double gamma_phi = params.qubit.pure_dephasing();
    if (gamma_phi > 0.0) {
        CollapseChannel dephasing;
        dephasing.op = ops.sigma_ee;
        dephasing.rate = 2.0 * gamma_phi;
        dephasing.op_dag_op = ops.sigma_ee;  // projector squared
        model.channels.push_back(std::move(dephasing));
    }

    CollapseChannel phonon_decay;
    phonon_decay.op = ops.b;
    phonon_decay.rate = kappa_m * (n_f + 1.0);
    phonon_decay.op_dag_op = ops.n_mech;
    model.channels.push_back(std::move(phonon_decay));

    if (n_f > 0.0) {
        CollapseChannel phonon_heating;
        phonon_heating.op = ops.b_dag;
        phonon_heating.rate = kappa_m * n_f;
        phonon_heating.op_dag_op = (ops.b * ops.b_dag).eval();
        model.channels.push_back(std::move(phonon_heating));
    }

    return model;
}

}  // namespace transim
