#include "esq/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "esq/analytics.hpp"

namespace esq::protocols {

using dicke::Axis;
using dicke::DickeState;
using dicke::OperatorKind;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

Step pulse(Axis axis, double angle) {
    Step s;
    s.type = Step::Type::Pulse;
    s.axis = axis;
    s.angle = angle;
    return s;
}

Step squeeze(double mu, int sign) {
    Step s;
    s.type = Step::Type::Squeeze;
    s.mu = mu;
    s.sign = sign;
    return s;
}

Step phase_rotation(Axis axis, double scale) {
    Step s;
    s.type = Step::Type::PhaseRotation;
    s.axis = axis;
    s.scale = scale;
    return s;
}

Step measure(Axis axis) {
    Step s;
    s.type = Step::Type::Measure;
    s.axis = axis;
    return s;
}

OperatorKind axis_operator(Axis axis) {
    switch (axis) {
        case Axis::X: return OperatorKind::Sx;
        case Axis::Y: return OperatorKind::Sy;
        default: return OperatorKind::Sz;
    }
}

DickeState run_steps(const ProtocolSpec& spec, int n_atoms, double phi, size_t n_steps) {
    DickeState state = dicke::make_css(n_atoms, kHalfPi, 0.0);
    for (size_t i = 0; i < n_steps && i < spec.steps.size(); ++i) {
        const Step& step = spec.steps[i];
        switch (step.type) {
            case Step::Type::Pulse:
                state = dicke::apply_rotation(state, step.axis, step.angle);
                break;
            case Step::Type::Squeeze:
                // e^{i sign mu Sz^2} == apply_oats with -sign*mu.
                state = dicke::apply_oats(state, -step.sign * step.mu);
                break;
            case Step::Type::PhaseRotation:
                state = dicke::apply_rotation(state, step.axis, step.scale * phi);
                break;
            case Step::Type::Measure:
                break;
        }
    }
    return state;
}

bool is_even_signal(Kind kind) { return kind != Kind::Cesp; }

}  // namespace

const char* kind_name(Kind kind) {
    switch (kind) {
        case Kind::GespE: return "gesp-e";
        case Kind::GespO: return "gesp-o";
        case Kind::Cesp: return "cesp";
        case Kind::ScspE: return "scsp-e";
        default: return "scsp-o";
    }
}

std::optional<Kind> kind_from_name(const std::string& name) {
    if (name == "gesp-e") return Kind::GespE;
    if (name == "gesp-o") return Kind::GespO;
    if (name == "cesp") return Kind::Cesp;
    if (name == "scsp-e") return Kind::ScspE;
    if (name == "scsp-o") return Kind::ScspO;
    return std::nullopt;
}

dicke::Axis ProtocolSpec::measure_axis() const {
    if (steps.empty() || steps.back().type != Step::Type::Measure)
        throw std::logic_error("ProtocolSpec: missing trailing Measure step");
    return steps.back().axis;
}

ProtocolSpec build_protocol(Kind kind, Form form, double mu) {
    if (mu < 0.0 || mu > kHalfPi + 1e-12)
        throw std::invalid_argument("build_protocol: mu must lie in [0, pi/2]");
    if (kind == Kind::ScspE || kind == Kind::ScspO) mu = kHalfPi;

    // E versions rotate about x (auxiliary pulses about y); O versions and
    // the CESP rotate about y (auxiliary pulses about x). Pulse signs are the
    // gauge that keeps every measured signal positive at phi = 0.
    const bool e_version = kind == Kind::GespE || kind == Kind::ScspE;
    const Axis rot_axis = e_version ? Axis::X : Axis::Y;
    const Axis aux_axis = e_version ? Axis::Y : Axis::X;
    const double aux_first = e_version ? -kHalfPi : kHalfPi;
    const Axis meas_axis = kind == Kind::Cesp ? Axis::Y : Axis::X;
    // Readout pulse mapping <Sz> after the pulse onto the simplified-form
    // observable: R_y(-pi/2) -> +Sx, R_x(+pi/2) -> +Sy.
    const Axis readout_axis = kind == Kind::Cesp ? Axis::X : Axis::Y;
    const double readout_angle = kind == Kind::Cesp ? kHalfPi : -kHalfPi;

    ProtocolSpec spec;
    spec.kind = kind;
    spec.form = form;
    spec.mu = mu;

    spec.steps.push_back(squeeze(mu, -1));
    switch (form) {
        case Form::Simplified:
            spec.steps.push_back(phase_rotation(rot_axis, 1.0));
            break;
        case Form::Clock:
            spec.steps.push_back(pulse(aux_axis, aux_first));
            spec.steps.push_back(phase_rotation(Axis::Z, 1.0));
            spec.steps.push_back(pulse(aux_axis, -aux_first));
            break;
        case Form::Lpai:
            // Both auxiliary pulses share a sign; the middle pi pulse flips
            // the dark-period phase, which is why the two half phases carry
            // opposite scales.
            spec.steps.push_back(pulse(aux_axis, aux_first));
            spec.steps.push_back(phase_rotation(Axis::Z, 0.5));
            spec.steps.push_back(pulse(aux_axis, kPi));
            spec.steps.push_back(phase_rotation(Axis::Z, -0.5));
            spec.steps.push_back(pulse(aux_axis, aux_first));
            break;
    }
    spec.steps.push_back(squeeze(mu, +1));

    if (form == Form::Simplified) {
        spec.steps.push_back(measure(meas_axis));
    } else {
        spec.steps.push_back(pulse(readout_axis, readout_angle));
        spec.steps.push_back(measure(Axis::Z));
    }
    return spec;
}

DickeState run(const ProtocolSpec& spec, int n_atoms, double phi) {
    if (n_atoms < 1) throw std::invalid_argument("run: n_atoms must be >= 1");
    return run_steps(spec, n_atoms, phi, spec.steps.size());
}

double signal(const ProtocolSpec& spec, int n_atoms, double phi) {
    const DickeState state = run(spec, n_atoms, phi);
    return expectation(state, axis_operator(spec.measure_axis())).real();
}

double noise(const ProtocolSpec& spec, int n_atoms, double phi) {
    const DickeState state = run(spec, n_atoms, phi);
    return std::sqrt(dicke::variance(state, axis_operator(spec.measure_axis())));
}

std::optional<double> numeric_sensitivity(const ProtocolSpec& spec, int n_atoms) {
    if (n_atoms < 2) throw std::invalid_argument("numeric_sensitivity: n_atoms must be >= 2");
    const double s = 0.5 * n_atoms;
    const OperatorKind meas = axis_operator(spec.measure_axis());

    struct Point {
        double signal, noise;
    };
    auto eval = [&](double phi) {
        const DickeState state = run(spec, n_atoms, phi);
        return Point{expectation(state, meas).real(),
                     std::sqrt(dicke::variance(state, meas))};
    };

    if (is_even_signal(spec.kind)) {
        // Probe inside the central fringe, whose width shrinks as 1/M.
        const double pmf_estimate = std::sqrt(2.0) * s * std::sin(spec.mu);
        const double h = 1e-2 / std::max(1.0, pmf_estimate);

        const Point p0 = eval(0.0);
        const Point p1p = eval(h), p1m = eval(-h);
        const Point p2p = eval(2.0 * h), p2m = eval(-2.0 * h);

        // Richardson-extrapolated second difference for the curvature and
        // first difference for the noise slope (both O(h^4) accurate).
        const double d1 = (p1p.signal + p1m.signal - 2.0 * p0.signal) / (2.0 * h * h);
        const double d2 = (p2p.signal + p2m.signal - 2.0 * p0.signal) / (8.0 * h * h);
        const double curvature = (4.0 * d1 - d2) / 3.0;
        const double s1 = 0.5 * (p1p.noise + p1m.noise) / h;
        const double s2 = 0.5 * (p2p.noise + p2m.noise) / (2.0 * h);
        const double noise_slope = (4.0 * s1 - s2) / 3.0;

        if (noise_slope < 1e-300) return std::optional<double>();
        return std::optional<double>(2.0 * std::abs(curvature) / noise_slope);
    }

    // Anti-symmetric signal (CESP): plain slope over the phi=0 noise.
    const double slope_estimate =
        (n_atoms - 1.0) * analytics::signed_pow_int(std::cos(spec.mu), n_atoms - 2) *
        std::sin(spec.mu);
    const double h = 1e-3 / std::max(1.0, std::abs(slope_estimate));

    const Point p1p = eval(h), p1m = eval(-h);
    const Point p2p = eval(2.0 * h), p2m = eval(-2.0 * h);
    const double slope =
        (8.0 * (p1p.signal - p1m.signal) - (p2p.signal - p2m.signal)) / (12.0 * h);
    const double n0 = eval(0.0).noise;
    if (n0 < 1e-300) return std::nullopt;
    return std::abs(slope) / n0;
}

double ReductionResidual::max() const {
    return std::max(std::max(clock_state, clock_signal), std::max(lpai_state, lpai_signal));
}

ReductionResidual verify_reduction(Kind kind, int n_atoms, double mu, double phi) {
    const ProtocolSpec simplified = build_protocol(kind, Form::Simplified, mu);
    const DickeState target = run(simplified, n_atoms, phi);
    const double target_signal = signal(simplified, n_atoms, phi);
    const double s = 0.5 * n_atoms;

    ReductionResidual out;
    for (Form form : {Form::Clock, Form::Lpai}) {
        const ProtocolSpec full = build_protocol(kind, form, mu);
        // Equivalence point: after the inverse squeeze, before the readout
        // pulse (second-to-last step) and the Measure.
        const DickeState echoed = run_steps(full, n_atoms, phi, full.steps.size() - 2);
        const double state_residual = 1.0 - std::abs(dicke::overlap(echoed, target));
        const double signal_residual = std::abs(signal(full, n_atoms, phi) - target_signal) / s;
        if (form == Form::Clock) {
            out.clock_state = state_residual;
            out.clock_signal = signal_residual;
        } else {
            out.lpai_state = state_residual;
            out.lpai_signal = signal_residual;
        }
    }
    return out;
}

dicke::Axis cat_orientation(int n_atoms) {
    if (n_atoms < 2) throw std::invalid_argument("cat_orientation: n_atoms must be >= 2");
    const DickeState cat = dicke::apply_oats(dicke::make_css(n_atoms, kHalfPi, 0.0), kHalfPi);
    const double xx = expectation(cat, OperatorKind::Sx, OperatorKind::Sx).real();
    const double yy = expectation(cat, OperatorKind::Sy, OperatorKind::Sy).real();
    return xx > yy ? Axis::X : Axis::Y;
}

}  // namespace esq::protocols
