// Closed-form results for the echo-squeezing protocols: the quadratic-order
// signal/variance coefficient vectors, GESP and CESP sensitivities, quantum
// Cramer-Rao bounds, the sensitivity plateau, phase-magnification and
// noise-amplification factors, detection-noise sensitivity and the hopping
// operating point. Stateless pure functions; angles in radians.

#pragma once

#include <array>
#include <optional>

namespace esq::analytics {

enum class GespVersion { E, O };

/// sign(base^exponent) * exp(exponent * ln|base|), with an explicit zero once
/// |base|^exponent underflows. Keeps the parity-carrying cos^(2S-k) 2mu terms
/// clean near mu = pi/2 where pow() would round through denormals.
double signed_pow_int(double base, long long exponent);

/// The eight coefficient vectors of the quadratic expansion. b1 components
/// are stored as cos^(2S-4+j) 2mu so the negative exponents arising for
/// 2S < 4 never multiply out as inf * 0.
struct CoefficientSet {
    std::array<double, 3> a10, a20, a30;
    std::array<double, 4> a11, a21, a31;
    std::array<double, 3> b0;
    std::array<double, 4> b1;
};

CoefficientSet coefficient_set(int two_s, double mu);

/// Signal numerator a10.b0 +/- a11.b1 and variance denominator
/// a30.b0 +/- a31.b1, with "+" for version E and "-" for version O.
double signal_curvature(int n_atoms, double mu, GespVersion version);
double variance_curvature(int n_atoms, double mu, GespVersion version);

/// Phase sensitivity 2|a10.b0 +/- a11.b1| / sqrt(a30.b0 +/- a31.b1).
/// Empty when the denominator vanishes (flat signal, e.g. version E at mu=0).
/// Requires n_atoms >= 4; below that the coefficient exponents go negative.
std::optional<double> gesp_sensitivity(int n_atoms, double mu, GespVersion version);

struct Quadratic {
    double signal;
    double variance;
};

/// Small-phi expansion: signal = S + phi^2 (a10.b0 +/- a11.b1),
/// variance = phi^2 (a30.b0 +/- a31.b1).
Quadratic gesp_expansion(int n_atoms, double mu, double phi, GespVersion version);

/// sqrt(2S) (2S-1) cos^(2S-2) mu sin mu; peaks near mu = arccot sqrt(2S-2).
double cesp_sensitivity(int n_atoms, double mu);

/// Quantum Cramer-Rao bound 2 Delta S of the post-squeeze state: the x-variance
/// form for version E, the y-variance form for version O (which also covers
/// the CESP, the rotation axis being the same).
double qcr_bound(int n_atoms, double mu, GespVersion version);

struct Plateau {
    double mu_lo;
    double mu_hi;
    double value;  // N / sqrt(2)
};

/// Squeezing-parameter window [4 S^-1/2, pi/2 - S^-1/2] where the sensitivity
/// sits at N/sqrt(2) independent of parity. Requires n_atoms >= 32.
Plateau plateau(int n_atoms);

enum class PmfProtocol { GespPlateau, CespOptimum, ScspMatched, ScspCrossed };

struct PmfNaf {
    double m;  // phase magnification factor
    double a;  // noise amplification factor
    bool outside_plateau = false;
};

PmfNaf pmf_naf(int n_atoms, double mu, PmfProtocol protocol);

/// Hopping-point sensitivity with detection noise:
/// sqrt(2) S^2 sin(mu) / sqrt((S sin mu)^2 + dn^2). Valid on the plateau.
double sensitivity_with_detection_noise(int n_atoms, double mu, double dn);

/// pi / (2M) with M = sqrt(2) S sin(mu), the phase where the signal slope of
/// the central fringe is maximal.
double hopping_operating_point(int n_atoms, double mu);

struct FringePoint {
    double signal;
    double noise;
};

/// Parity-matched fringe (S cos 2S phi, S |sin 2S phi|) or parity-crossed
/// fringe (S cos^(2S-1) phi, sqrt((2S-1)S/2) |sin(phi sqrt(2S-1))|). The
/// crossed noise form is a small-phi expansion, reliable for
/// |phi| sqrt(2S-1) < pi/4.
FringePoint scsp_fringe(int n_atoms, bool matched, double phi);

}  // namespace esq::analytics
