// Scalar decoherence models: cavity-decay signal and variance factors, the
// combined cavity/spontaneous-emission budget with its optimal probe
// detuning, and the background-collision contrast model together with its
// brute-force two-ensemble oracle.
//
// The squeezing rate chi and the interaction time t never appear separately;
// everything is parameterized by mu = chi*t, with the full squeeze+unsqueeze
// cycle contributing chi*t_total = 2*mu. Quantities labelled "per unit chi"
// multiply by chi to become rates.

#pragma once

#include <optional>

namespace esq::decoherence {

struct DecoherenceParams {
    double kappa = 0.0;      // cavity decay rate
    double delta_abs = 1.0;  // |probe detuning|, > 0
    double gamma_sp = 0.0;   // atomic spontaneous decay rate
    double g = 0.0;          // single-photon Rabi half-coupling
    std::optional<double> alpha;  // in [1, N]; defaults to the plateau PMF

    /// Single-atom cooperativity (2g)^2 / (kappa * gamma_sp), recomputed on
    /// every call.
    double cooperativity() const;
    /// Accumulated collective-dephasing exponent gamma*t = 2 mu kappa/|delta|.
    double gamma_t(double mu) const;
    /// alpha if set, otherwise sqrt(2) S sin(mu) clamped to [1, N].
    double resolve_alpha(double mu, int n_atoms) const;

    void validate() const;
};

/// Multiplicative reduction of <Sx,y> from cavity decay over the full
/// squeeze+unsqueeze cycle: exp(-mu kappa / |delta|).
double cavity_signal_factor(double mu, const DecoherenceParams& params);

struct VariancePair {
    double var_x;
    double var_y;
};

/// Convex mixing of the two ideal second moments,
/// <S_{x,y}^2> = (1+e^{-2 gamma t})/2 <S_{x,y}^2>_ideal
///             + (1-e^{-2 gamma t})/2 <S_{y,x}^2>_ideal.
/// The sum is preserved exactly.
VariancePair cavity_variance_mix(double gamma_t, double var_x_ideal, double var_y_ideal);

struct SpontaneousBudget {
    double gamma_eff;   // effective decay rate per unit chi: Gamma |delta| / (2g)^2
    double delta_opt;   // detuning balancing cavity decay against spontaneous emission
    double net_factor;  // best combined signal factor, exp(-2 mu sqrt(2 alpha / C))
    double mu_bound;    // sqrt(C / (sqrt(2) N)), alpha approximated by the plateau PMF
};

SpontaneousBudget spontaneous_budget(double mu, const DecoherenceParams& params, int n_atoms);

struct CollisionScenario {
    int n_atoms = 1;
    int n_collided = 0;  // atoms ejected between squeeze and unsqueeze
    double mu = 0.0;

    void validate() const;
};

/// Closed-form signal with n_collided atoms escaping the inverse squeeze:
/// (S - S_tilde) cos^(2 S_tilde) mu.
double collision_signal(const CollisionScenario& scn);

/// Brute-force check of the closed form on the product of two Dicke spaces
/// (survivors x collided): full squeeze on the joint spin, inverse squeeze on
/// the survivors only, then <Sx> of the survivors. Cost limits N to 16.
double collision_oracle(const CollisionScenario& scn);

/// Number of collisions that drops the fringe contrast by a factor of e:
/// -1/ln(cos mu), with explicit boundary values +inf at mu = 0 and 0 at
/// mu = pi/2. Small-mu asymptote 2/mu^2. Returns a real; callers round down.
double max_tolerable_collisions(double mu);

}  // namespace esq::decoherence
