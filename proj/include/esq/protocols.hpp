// Builders and runners for the five echo-squeezing protocol variants in their
// simplified three-step form and in the full Ramsey-clock and light-pulse
// interferometer forms, plus the brute-force finite-difference sensitivity
// oracle and the reduction checks that tie the full forms to the simplified
// ones.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esq/dicke.hpp"

namespace esq::protocols {

enum class Kind { GespE, GespO, Cesp, ScspE, ScspO };
enum class Form { Simplified, Clock, Lpai };

const char* kind_name(Kind kind);
std::optional<Kind> kind_from_name(const std::string& name);

struct Step {
    enum class Type { Pulse, Squeeze, PhaseRotation, Measure };

    Type type;
    dicke::Axis axis = dicke::Axis::X;  // Pulse / PhaseRotation / Measure
    double angle = 0.0;                 // Pulse, radians
    double mu = 0.0;                    // Squeeze
    int sign = -1;                      // Squeeze: propagator e^{i sign mu Sz^2}
    double scale = 0.0;                 // PhaseRotation: multiple of the scan phase
};

struct ProtocolSpec {
    Kind kind;
    Form form;
    double mu = 0.0;
    std::vector<Step> steps;  // exactly one Measure, last

    dicke::Axis measure_axis() const;
};

/// Sequences follow the simplified picture: forward squeeze, effective phase
/// rotation about x (E versions) or y (O versions and CESP), inverse squeeze,
/// then measure Sx (GESP/SCSP) or Sy (CESP). Clock and LPAI forms spell out
/// the auxiliary and readout pulses that realize the same dynamics.
/// SCSP variants pin mu to pi/2. Requires 0 <= mu <= pi/2.
ProtocolSpec build_protocol(Kind kind, Form form, double mu);

/// Evolve from the CSS |x> (the opening clock pulse folded in) through every
/// unitary step; the trailing Measure step carries no dynamics. phi is the
/// scan phase consumed by PhaseRotation steps.
dicke::DickeState run(const ProtocolSpec& spec, int n_atoms, double phi);

/// <S_meas> and sqrt(Var S_meas) on the final state.
double signal(const ProtocolSpec& spec, int n_atoms, double phi);
double noise(const ProtocolSpec& spec, int n_atoms, double phi);

/// |d_phi <S>| / Delta S at phi = 0 by finite differences. The CESP signal is
/// odd in phi, so the slope and the phi=0 noise are used directly; the
/// GESP/SCSP signal and noise both vanish quadratically/linearly, so the
/// ratio of their phi-slopes is taken instead (L'Hopital numerically),
/// Richardson-extrapolated. Empty when the noise slope underflows (flat
/// signal, e.g. GESP-e at mu = 0).
std::optional<double> numeric_sensitivity(const ProtocolSpec& spec, int n_atoms);

struct ReductionResidual {
    double clock_state = 0.0;   // 1 - |<clock|simplified>|
    double clock_signal = 0.0;  // |signal difference| / S
    double lpai_state = 0.0;
    double lpai_signal = 0.0;

    double max() const;
};

/// Run the clock and LPAI forms against the simplified form: state overlap at
/// the post-echo point (before the readout pulse) plus measured-signal
/// agreement through the readout pulse.
ReductionResidual verify_reduction(Kind kind, int n_atoms, double mu, double phi);

/// Orientation of the cat produced by OATS at mu = pi/2 on |x>, classified by
/// comparing <Sx^2> with <Sy^2>: x for even N, y for odd N.
dicke::Axis cat_orientation(int n_atoms);

}  // namespace esq::protocols
