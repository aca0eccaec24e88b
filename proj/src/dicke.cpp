#include "esq/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "esq/rotation.hpp"

namespace esq::dicke {

namespace {

constexpr double kPi = std::numbers::pi;

// i^k for the S_y = U^dag S_x U gauge, U = diag(i^k).
cplx i_pow(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// dst = M * src for a real row-major n x n matrix and complex vector.
// Each output element is one thread's sequential dot product, so the result
// is independent of the thread count.
void real_matvec(const double* mat, int n, const cplx* src, cplx* dst) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* row = mat + size_t(i) * n;
        double re = 0.0, im = 0.0;
        for (int j = 0; j < n; ++j) {
            re += row[j] * src[j].real();
            im += row[j] * src[j].imag();
        }
        dst[i] = {re, im};
    }
}

void check_state(const DickeState& state) {
    if (state.spin.two_s < 1) throw std::invalid_argument("DickeState: two_s must be >= 1");
    if (int(state.amp.size()) != state.dimension())
        throw std::invalid_argument("DickeState: amplitude size does not match 2S+1");
}

}  // namespace

double DickeState::norm2() const {
    double n = 0.0;
    for (const cplx& a : amp) n += std::norm(a);
    return n;
}

std::vector<double> css_log_amplitudes(int n_atoms, double theta) {
    const int n = n_atoms;
    const double lc = std::log(std::abs(std::cos(0.5 * theta)));
    const double ls = std::log(std::abs(std::sin(0.5 * theta)));
    std::vector<double> out(n + 1);
    const double lg_n = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
        // |amp_k| = sqrt(C(n,k)) cos^k sin^(n-k); lgamma keeps n ~ 10^4 exact enough.
        const double log_binom = 0.5 * (lg_n - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
        double v = log_binom;
        v += (k == 0) ? 0.0 : k * lc;
        v += (k == n) ? 0.0 : (n - k) * ls;
        // A vanishing spinor component zeroes every amplitude that uses it.
        if ((k > 0 && !std::isfinite(lc)) || (k < n && !std::isfinite(ls)))
            v = -std::numeric_limits<double>::infinity();
        out[k] = v;
    }
    return out;
}

DickeState make_css(int n_atoms, double theta, double phi) {
    if (n_atoms < 1) throw std::invalid_argument("make_css: n_atoms must be >= 1");
    DickeState state;
    state.spin.two_s = n_atoms;
    state.amp.resize(n_atoms + 1);

    const std::vector<double> logs = css_log_amplitudes(n_atoms, theta);
    for (int k = 0; k <= n_atoms; ++k) {
        const double r = std::isfinite(logs[k]) ? std::exp(logs[k]) : 0.0;
        // Down-component count is n-k; each carries e^{i phi}.
        const double arg = (n_atoms - k) * phi;
        state.amp[k] = r * cplx(std::cos(arg), std::sin(arg));
    }
    const double nrm = std::sqrt(state.norm2());
    for (cplx& a : state.amp) a /= nrm;
    return state;
}

DickeState apply_oats(const DickeState& state, double mu) {
    check_state(state);
    DickeState out = state;
    for (int k = 0; k < state.dimension(); ++k) {
        const double m = state.spin.m(k);
        const double arg = -mu * m * m;
        out.amp[k] *= cplx(std::cos(arg), std::sin(arg));
    }
    return out;
}

DickeState apply_rotation(const DickeState& state, Axis axis, double angle) {
    check_state(state);
    const int n = state.dimension();
    DickeState out = state;

    if (axis == Axis::Z) {
        for (int k = 0; k < n; ++k) {
            const double arg = -angle * state.spin.m(k);
            out.amp[k] *= cplx(std::cos(arg), std::sin(arg));
        }
        return out;
    }

    auto sys = x_eigensystem(state.spin.two_s);
    std::vector<cplx> work(n), phased(n);

    const cplx* src = state.amp.data();
    std::vector<cplx> gauged;
    if (axis == Axis::Y) {
        gauged.resize(n);
        for (int k = 0; k < n; ++k) gauged[k] = i_pow(k) * state.amp[k];
        src = gauged.data();
    }

    real_matvec(sys->vectors_t.data(), n, src, work.data());
    for (int j = 0; j < n; ++j) {
        const double arg = -angle * sys->eigenvalues[j];
        work[j] *= cplx(std::cos(arg), std::sin(arg));
    }
    real_matvec(sys->vectors.data(), n, work.data(), phased.data());

    if (axis == Axis::Y) {
        for (int k = 0; k < n; ++k) out.amp[k] = std::conj(i_pow(k)) * phased[k];
    } else {
        out.amp = std::move(phased);
    }
    return out;
}

std::vector<cplx> apply_operator(const DickeState& state, OperatorKind kind) {
    check_state(state);
    const int n = state.dimension();
    const double s = state.spin.s();
    std::vector<cplx> out(n, cplx(0.0, 0.0));

    auto raise_coeff = [&](int k) {  // <k+1| S_+ |k>
        const double m = state.spin.m(k);
        return std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    };

    switch (kind) {
        case OperatorKind::Sz:
            for (int k = 0; k < n; ++k) out[k] = state.spin.m(k) * state.amp[k];
            break;
        case OperatorKind::Splus:
            for (int k = 0; k + 1 < n; ++k) out[k + 1] += raise_coeff(k) * state.amp[k];
            break;
        case OperatorKind::Sminus:
            for (int k = 1; k < n; ++k) out[k - 1] += raise_coeff(k - 1) * state.amp[k];
            break;
        case OperatorKind::Sx:
            for (int k = 0; k + 1 < n; ++k) {
                const double c = 0.5 * raise_coeff(k);
                out[k + 1] += c * state.amp[k];
                out[k] += c * state.amp[k + 1];
            }
            break;
        case OperatorKind::Sy:
            for (int k = 0; k + 1 < n; ++k) {
                const cplx c(0.0, 0.5 * raise_coeff(k));
                out[k + 1] -= c * state.amp[k];
                out[k] += c * state.amp[k + 1];
            }
            break;
    }
    return out;
}

cplx expectation(const DickeState& state, const std::vector<OperatorKind>& word) {
    if (word.empty()) throw std::invalid_argument("expectation: empty operator word");
    if (word.size() > 2) throw std::invalid_argument("expectation: word length must be 1 or 2");
    if (word.size() == 1) return expectation(state, word[0]);
    return expectation(state, word[0], word[1]);
}

cplx expectation(const DickeState& state, OperatorKind op) {
    std::vector<cplx> applied = apply_operator(state, op);
    cplx acc(0.0, 0.0);
    for (size_t k = 0; k < applied.size(); ++k) acc += std::conj(state.amp[k]) * applied[k];
    return acc;
}

cplx expectation(const DickeState& state, OperatorKind op1, OperatorKind op2) {
    std::vector<cplx> inner = apply_operator(state, op2);
    DickeState tmp = state;
    tmp.amp = std::move(inner);
    std::vector<cplx> outer = apply_operator(tmp, op1);
    cplx acc(0.0, 0.0);
    for (size_t k = 0; k < outer.size(); ++k) acc += std::conj(state.amp[k]) * outer[k];
    return acc;
}

double variance(const DickeState& state, OperatorKind kind) {
    // <O^2> as the norm of O|psi>, exact non-negative.
    std::vector<cplx> applied = apply_operator(state, kind);
    double second = 0.0;
    for (const cplx& a : applied) second += std::norm(a);
    cplx first(0.0, 0.0);
    for (size_t k = 0; k < applied.size(); ++k) first += std::conj(state.amp[k]) * applied[k];
    const double v = second - std::norm(first);
    if (v >= 0.0) return v;
    if (v >= -1e-10 * std::max(1.0, second)) return 0.0;
    throw std::logic_error("variance: negative beyond rounding budget");
}

cplx overlap(const DickeState& a, const DickeState& b) {
    if (a.spin.two_s != b.spin.two_s)
        throw std::invalid_argument("overlap: mismatched spin magnitudes");
    cplx acc(0.0, 0.0);
    for (size_t k = 0; k < a.amp.size(); ++k) acc += std::conj(a.amp[k]) * b.amp[k];
    return acc;
}

double HusimiGrid::sphere_norm() const {
    const double d_theta = kPi / n_theta;
    const double d_phi = 2.0 * kPi / n_phi;
    double acc = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_phi; ++j) row += at(i, j);
        acc += row * std::sin(theta[i]);
    }
    return acc * d_theta * d_phi * (two_s + 1) / (4.0 * kPi);
}

HusimiGrid husimi_grid(const DickeState& state, int n_theta, int n_phi) {
    check_state(state);
    if (n_theta < 2 || n_phi < 2) throw std::invalid_argument("husimi_grid: grid sizes must be >= 2");

    const int n = state.spin.two_s;
    HusimiGrid grid;
    grid.two_s = n;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.theta.resize(n_theta);
    grid.phi.resize(n_phi);
    grid.values.assign(size_t(n_theta) * n_phi, 0.0);
    for (int i = 0; i < n_theta; ++i) grid.theta[i] = (i + 0.5) * kPi / n_theta;
    for (int j = 0; j < n_phi; ++j) grid.phi[j] = j * 2.0 * kPi / n_phi;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_theta; ++i) {
        const std::vector<double> logs = css_log_amplitudes(n, grid.theta[i]);
        std::vector<double> r(n + 1);
        for (int k = 0; k <= n; ++k) r[k] = std::isfinite(logs[k]) ? std::exp(logs[k]) : 0.0;
        for (int j = 0; j < n_phi; ++j) {
            // <theta,phi|psi> with bra amplitudes r_k e^{i (n-k) phi}.
            const double ph = grid.phi[j];
            cplx acc(0.0, 0.0);
            for (int k = 0; k <= n; ++k) {
                const double arg = -(n - k) * ph;
                acc += r[k] * cplx(std::cos(arg), std::sin(arg)) * state.amp[k];
            }
            grid.values[size_t(i) * n_phi + j] = std::norm(acc);
        }
    }
    return grid;
}

}  // namespace esq::dicke
