#include "esq/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace esq::analytics {

namespace {

constexpr double kPi = std::numbers::pi;

// Dot product skipping exact-zero coefficients, so a zero a-entry silences an
// infinite b-entry (negative exponents at 2S < 4) instead of producing NaN.
template <size_t n>
double guarded_dot(const std::array<double, n>& a, const std::array<double, n>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (a[i] != 0.0) acc += a[i] * b[i];
    return acc;
}

void require_atoms(int n_atoms, int minimum, const char* who) {
    if (n_atoms < minimum)
        throw std::invalid_argument(std::string(who) + ": n_atoms below supported minimum");
}

}  // namespace

double signed_pow_int(double base, long long exponent) {
    if (exponent == 0) return 1.0;
    const double mag = std::abs(base);
    const bool negative = base < 0.0 && (exponent & 1LL);
    if (mag == 0.0) {
        if (exponent > 0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    const double v = std::exp(double(exponent) * std::log(mag));
    return negative ? -v : v;
}

CoefficientSet coefficient_set(int two_s, double mu) {
    if (two_s < 2) throw std::invalid_argument("coefficient_set: two_s must be >= 2");
    const double s = 0.5 * two_s;
    const double c = std::cos(2.0 * mu);

    CoefficientSet out;
    out.a10 = {0.5 * s * (-s * (s + 0.5)), 0.5 * s * ((s - 0.5) * (s + 1.0)), 0.0};
    out.a11 = {0.0, 0.5 * s * ((s - 0.5) * (s - 1.0)), 0.5 * s * (-s * (s - 0.5)), 0.5 * s * s};
    out.a20 = {0.5 * s * (s - 0.5) * (-(s - 0.5) * (s + 1.0)), 0.0,
               0.5 * s * (s - 0.5) * ((s - 1.0) * (s + 1.5))};
    out.a21 = {0.5 * s * (s - 0.5) * ((s - 1.0) * (s - 1.5)), 0.0,
               0.5 * s * (s - 0.5) * (-(s * s - 2.5 * s + 0.5)), 0.0};
    out.a30 = {0.5 * s * (s * s * s + s * s + 0.75 * s - 0.25),
               0.5 * s * (-2.0 * s * (s + 1.0) * (s - 0.5)),
               0.5 * s * ((s - 0.5) * (s - 1.0) * (s + 1.5))};
    out.a31 = {0.5 * s * ((s - 0.5) * (s - 1.0) * (s - 1.5)),
               0.5 * s * (-2.0 * s * (s - 0.5) * (s - 1.0)),
               0.5 * s * ((s - 0.5) * (s * s + 2.5 * s - 0.5)), 0.5 * s * (-2.0 * s * s)};
    out.b0 = {1.0, c, c * c};
    for (int j = 0; j < 4; ++j) out.b1[j] = signed_pow_int(c, two_s - 4 + j);
    return out;
}

double signal_curvature(int n_atoms, double mu, GespVersion version) {
    const CoefficientSet cs = coefficient_set(n_atoms, mu);
    const double sign = version == GespVersion::E ? 1.0 : -1.0;
    return guarded_dot(cs.a10, cs.b0) + sign * guarded_dot(cs.a11, cs.b1);
}

double variance_curvature(int n_atoms, double mu, GespVersion version) {
    const CoefficientSet cs = coefficient_set(n_atoms, mu);
    const double sign = version == GespVersion::E ? 1.0 : -1.0;
    return guarded_dot(cs.a30, cs.b0) + sign * guarded_dot(cs.a31, cs.b1);
}

std::optional<double> gesp_sensitivity(int n_atoms, double mu, GespVersion version) {
    require_atoms(n_atoms, 4, "gesp_sensitivity");
    if (mu < 0.0 || mu > kPi / 2.0 + 1e-12)
        throw std::invalid_argument("gesp_sensitivity: mu must lie in [0, pi/2]");
    const double num = 2.0 * std::abs(signal_curvature(n_atoms, mu, version));
    const double den = variance_curvature(n_atoms, mu, version);
    if (den <= 0.0) return std::nullopt;
    return num / std::sqrt(den);
}

Quadratic gesp_expansion(int n_atoms, double mu, double phi, GespVersion version) {
    require_atoms(n_atoms, 4, "gesp_expansion");
    const double s = 0.5 * n_atoms;
    const double p2 = phi * phi;
    return {s + p2 * signal_curvature(n_atoms, mu, version),
            p2 * variance_curvature(n_atoms, mu, version)};
}

double cesp_sensitivity(int n_atoms, double mu) {
    require_atoms(n_atoms, 2, "cesp_sensitivity");
    const double s = 0.5 * n_atoms;
    return std::sqrt(2.0 * s) * (2.0 * s - 1.0) * signed_pow_int(std::cos(mu), n_atoms - 2) *
           std::sin(mu);
}

double qcr_bound(int n_atoms, double mu, GespVersion version) {
    require_atoms(n_atoms, 2, "qcr_bound");
    const double s = 0.5 * n_atoms;
    const double tail = 2.0 * s * (s - 0.5) * signed_pow_int(std::cos(2.0 * mu), n_atoms - 2);
    if (version == GespVersion::O) return std::sqrt(2.0 * s * (s + 0.5) - tail);
    const double mean = 2.0 * s * signed_pow_int(std::cos(mu), n_atoms - 1);
    const double v = 2.0 * s * (s + 0.5) + tail - mean * mean;
    return std::sqrt(std::max(v, 0.0));
}

Plateau plateau(int n_atoms) {
    require_atoms(n_atoms, 32, "plateau");
    const double s = 0.5 * n_atoms;
    const double rs = 1.0 / std::sqrt(s);
    return {4.0 * rs, kPi / 2.0 - rs, n_atoms / std::sqrt(2.0)};
}

PmfNaf pmf_naf(int n_atoms, double mu, PmfProtocol protocol) {
    require_atoms(n_atoms, 2, "pmf_naf");
    const double s = 0.5 * n_atoms;
    switch (protocol) {
        case PmfProtocol::GespPlateau: {
            PmfNaf out{std::sqrt(2.0) * s * std::sin(mu), std::sqrt(2.0 * s) * std::sin(mu), false};
            const double rs = 1.0 / std::sqrt(s);
            out.outside_plateau = mu < 4.0 * rs || mu > kPi / 2.0 - rs;
            return out;
        }
        case PmfProtocol::CespOptimum:
            return {std::sqrt(n_atoms / std::numbers::e), 1.0, false};
        case PmfProtocol::ScspMatched:
            return {2.0 * s, std::sqrt(2.0 * s), false};
        case PmfProtocol::ScspCrossed: {
            const double v = std::sqrt(2.0 * s - 1.0);
            return {v, v, false};
        }
    }
    throw std::logic_error("pmf_naf: unreachable");
}

double sensitivity_with_detection_noise(int n_atoms, double mu, double dn) {
    require_atoms(n_atoms, 2, "sensitivity_with_detection_noise");
    if (dn < 0.0) throw std::invalid_argument("sensitivity_with_detection_noise: dn must be >= 0");
    const double s = 0.5 * n_atoms;
    const double qpn = s * std::sin(mu);
    return std::sqrt(2.0) * s * qpn / std::sqrt(qpn * qpn + dn * dn);
}

double hopping_operating_point(int n_atoms, double mu) {
    require_atoms(n_atoms, 2, "hopping_operating_point");
    const double m = std::sqrt(2.0) * 0.5 * n_atoms * std::sin(mu);
    if (m <= 0.0) throw std::invalid_argument("hopping_operating_point: mu must be in (0, pi)");
    return kPi / (2.0 * m);
}

FringePoint scsp_fringe(int n_atoms, bool matched, double phi) {
    require_atoms(n_atoms, 2, "scsp_fringe");
    const double s = 0.5 * n_atoms;
    if (matched)
        return {s * std::cos(2.0 * s * phi), s * std::abs(std::sin(2.0 * s * phi))};
    const double root = std::sqrt(2.0 * s - 1.0);
    return {s * signed_pow_int(std::cos(phi), n_atoms - 1),
            std::sqrt((2.0 * s - 1.0) * s / 2.0) * std::abs(std::sin(phi * root))};
}

}  // namespace esq::analytics
