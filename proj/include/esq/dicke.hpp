// Exact collective-spin states of N two-level atoms in the (N+1)-dimensional
// Dicke basis |S,m>, S = N/2, together with the closed-form propagators used
// by the echo-squeezing protocols: axis rotations e^{-i phi S_w} and the
// one-axis-twist phase e^{-i mu S_z^2}. Everything is a pure function over
// immutable states; hbar = 1 throughout.

#pragma once

#include <complex>
#include <vector>

namespace esq::dicke {

using cplx = std::complex<double>;

enum class Axis { X, Y, Z };

enum class OperatorKind { Sx, Sy, Sz, Splus, Sminus };

/// Total spin stored as 2S (an integer equal to N), so half-integer S for
/// odd N never touches floating point until the last moment.
struct SpinMagnitude {
    int two_s = 1;

    int dimension() const { return two_s + 1; }
    double s() const { return 0.5 * two_s; }
    /// Magnetic quantum number for amplitude index k = 0..two_s.
    /// (2k - two_s) is an integer, so the half is exact.
    double m(int k) const { return 0.5 * (2 * k - two_s); }
};

/// Amplitudes over |S,m> with k = m + S ascending. Global phase is physical
/// bookkeeping and never stripped; compare states via |overlap|.
struct DickeState {
    SpinMagnitude spin;
    std::vector<cplx> amp;

    int dimension() const { return spin.dimension(); }
    double norm2() const;
};

/// Coherent spin state |theta,phi>: the product of N identical spinors
/// cos(theta/2)|z> + e^{i phi} sin(theta/2)|-z>. theta=0 gives |z>,
/// (pi/2, 0) gives |x>.
DickeState make_css(int n_atoms, double theta, double phi);

/// e^{-i angle S_axis} |psi>. Rotations about z are a diagonal phase; x and y
/// go through the cached tridiagonal eigendecomposition (see rotation.hpp).
DickeState apply_rotation(const DickeState& state, Axis axis, double angle);

/// One-axis-twist propagator e^{-i mu S_z^2}: amplitude at m picks up
/// e^{-i mu m^2}. The inverse squeeze is the same call with -mu.
DickeState apply_oats(const DickeState& state, double mu);

/// O|psi> for a single collective operator (sparse: diagonal or one
/// off-diagonal). The result is not normalized.
std::vector<cplx> apply_operator(const DickeState& state, OperatorKind kind);

/// <psi| O1 (O2) |psi> for a word of one or two operators, evaluated through
/// the sparse applications. Rejects empty words and words longer than two.
cplx expectation(const DickeState& state, const std::vector<OperatorKind>& word);
cplx expectation(const DickeState& state, OperatorKind op);
cplx expectation(const DickeState& state, OperatorKind op1, OperatorKind op2);

/// <O^2> - <O>^2, clamped to zero when rounding pushes it a hair negative.
double variance(const DickeState& state, OperatorKind kind);

/// <a|b>.
cplx overlap(const DickeState& a, const DickeState& b);

/// Husimi distribution Q(theta,phi) = |<theta,phi|psi>|^2 sampled on a
/// uniform grid; theta uses midpoint sampling so the poles never enter the
/// normalization quadrature.
struct HusimiGrid {
    int two_s = 0;
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> theta;   // midpoints in [0, pi]
    std::vector<double> phi;     // [0, 2pi)
    std::vector<double> values;  // row-major, theta outer

    double at(int i_theta, int j_phi) const { return values[size_t(i_theta) * n_phi + j_phi]; }
    /// (2S+1)/(4pi) * integral of Q over the sphere; equals 1 for any state.
    double sphere_norm() const;
};

HusimiGrid husimi_grid(const DickeState& state, int n_theta, int n_phi);

/// Log-magnitudes of the CSS amplitudes at azimuth 0, used by make_css and
/// the Husimi kernels: amp_k(theta,0) >= 0 with entries exp(values) and
/// -inf marking exact zeros at the poles.
std::vector<double> css_log_amplitudes(int n_atoms, double theta);

}  // namespace esq::dicke
