#include "esq/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "esq/dicke.hpp"

namespace esq::decoherence {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

void DecoherenceParams::validate() const {
    if (kappa < 0.0 || gamma_sp < 0.0 || g < 0.0)
        throw std::invalid_argument("DecoherenceParams: rates must be >= 0");
    if (delta_abs <= 0.0) throw std::invalid_argument("DecoherenceParams: delta_abs must be > 0");
    if (alpha && *alpha < 1.0) throw std::invalid_argument("DecoherenceParams: alpha must be >= 1");
}

double DecoherenceParams::cooperativity() const {
    return (2.0 * g) * (2.0 * g) / (kappa * gamma_sp);
}

double DecoherenceParams::gamma_t(double mu) const { return 2.0 * mu * kappa / delta_abs; }

double DecoherenceParams::resolve_alpha(double mu, int n_atoms) const {
    if (alpha) return std::clamp(*alpha, 1.0, double(n_atoms));
    const double pmf = std::sqrt(2.0) * 0.5 * n_atoms * std::sin(mu);
    return std::clamp(pmf, 1.0, double(n_atoms));
}

double cavity_signal_factor(double mu, const DecoherenceParams& params) {
    params.validate();
    return std::exp(-mu * params.kappa / params.delta_abs);
}

VariancePair cavity_variance_mix(double gamma_t, double var_x_ideal, double var_y_ideal) {
    if (gamma_t < 0.0) throw std::invalid_argument("cavity_variance_mix: gamma_t must be >= 0");
    const double keep = 0.5 * (1.0 + std::exp(-2.0 * gamma_t));
    const double swap = 1.0 - keep;
    return {keep * var_x_ideal + swap * var_y_ideal, keep * var_y_ideal + swap * var_x_ideal};
}

SpontaneousBudget spontaneous_budget(double mu, const DecoherenceParams& params, int n_atoms) {
    params.validate();
    if (n_atoms < 1) throw std::invalid_argument("spontaneous_budget: n_atoms must be >= 1");
    const double c = params.cooperativity();
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("spontaneous_budget: cooperativity must be finite and > 0");

    const double alpha = params.resolve_alpha(mu, n_atoms);
    SpontaneousBudget out;
    out.gamma_eff = params.gamma_sp * params.delta_abs / ((2.0 * params.g) * (2.0 * params.g));
    out.delta_opt = params.kappa * std::sqrt(c / (2.0 * alpha));
    out.net_factor = std::exp(-2.0 * mu * std::sqrt(2.0 * alpha / c));
    out.mu_bound = std::sqrt(c / (std::sqrt(2.0) * n_atoms));
    return out;
}

void CollisionScenario::validate() const {
    if (n_atoms < 1) throw std::invalid_argument("CollisionScenario: n_atoms must be >= 1");
    if (n_collided < 0 || n_collided > n_atoms)
        throw std::invalid_argument("CollisionScenario: need 0 <= n_collided <= n_atoms");
}

double collision_signal(const CollisionScenario& scn) {
    scn.validate();
    const double surviving_spin = 0.5 * (scn.n_atoms - scn.n_collided);
    double contrast = 1.0;
    if (scn.n_collided > 0) contrast = std::pow(std::cos(scn.mu), scn.n_collided);
    return surviving_spin * contrast;
}

double collision_oracle(const CollisionScenario& scn) {
    scn.validate();
    if (scn.n_atoms > 16) throw std::invalid_argument("collision_oracle: N must be <= 16");

    const int n_keep = scn.n_atoms - scn.n_collided;
    const int n_lost = scn.n_collided;
    if (n_keep == 0) return 0.0;

    // CSS |x> amplitudes for each factor; a zero-atom factor is the scalar 1.
    auto css_x = [](int n) {
        std::vector<dicke::cplx> a;
        if (n == 0) {
            a.assign(1, dicke::cplx(1.0, 0.0));
        } else {
            a = dicke::make_css(n, kHalfPi, 0.0).amp;
        }
        return a;
    };
    const std::vector<dicke::cplx> keep0 = css_x(n_keep);
    const std::vector<dicke::cplx> lost0 = css_x(n_lost);

    const int dim_keep = n_keep + 1;
    const int dim_lost = n_lost + 1;
    std::vector<dicke::cplx> joint(size_t(dim_keep) * dim_lost);

    const double s_keep = 0.5 * n_keep;
    for (int i = 0; i < dim_keep; ++i) {
        const double m_keep = 0.5 * (2 * i - n_keep);
        for (int j = 0; j < dim_lost; ++j) {
            const double m_lost = 0.5 * (2 * j - n_lost);
            const double m_tot = m_keep + m_lost;
            // Full squeeze on the joint spin, inverse squeeze on survivors.
            const double arg = -scn.mu * m_tot * m_tot + scn.mu * m_keep * m_keep;
            joint[size_t(i) * dim_lost + j] =
                keep0[i] * lost0[j] * dicke::cplx(std::cos(arg), std::sin(arg));
        }
    }

    // <Sx (survivors) x identity> on the joint state.
    double acc = 0.0;
    for (int i = 0; i + 1 < dim_keep; ++i) {
        const double m = 0.5 * (2 * i - n_keep);
        const double coeff = 0.5 * std::sqrt(s_keep * (s_keep + 1.0) - m * (m + 1.0));
        for (int j = 0; j < dim_lost; ++j) {
            const dicke::cplx lo = joint[size_t(i) * dim_lost + j];
            const dicke::cplx hi = joint[size_t(i + 1) * dim_lost + j];
            acc += 2.0 * coeff * (std::conj(hi) * lo).real();
        }
    }
    return acc;
}

double max_tolerable_collisions(double mu) {
    if (mu < 0.0 || mu > kHalfPi + 1e-12)
        throw std::invalid_argument("max_tolerable_collisions: mu must lie in [0, pi/2]");
    if (mu == 0.0) return std::numeric_limits<double>::infinity();
    if (mu >= kHalfPi) return 0.0;
    return -1.0 / std::log(std::cos(mu));
}

}  // namespace esq::decoherence
