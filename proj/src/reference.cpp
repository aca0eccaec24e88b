#include "esq/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "esq/rotation.hpp"

namespace esq::reference {

using dicke::Axis;
using dicke::cplx;
using dicke::DickeState;
using dicke::HusimiGrid;
using dicke::OperatorKind;

namespace {

cplx i_pow(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void matvec_serial(const double* mat, int n, const cplx* src, cplx* dst) {
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

}  // namespace

DickeState apply_rotation_serial(const DickeState& state, Axis axis, double angle) {
    const int n = state.dimension();
    DickeState out = state;

    if (axis == Axis::Z) {
        for (int k = 0; k < n; ++k) {
            const double arg = -angle * state.spin.m(k);
            out.amp[k] *= cplx(std::cos(arg), std::sin(arg));
        }
        return out;
    }

    auto sys = dicke::x_eigensystem(state.spin.two_s);
    std::vector<cplx> src = state.amp;
    if (axis == Axis::Y)
        for (int k = 0; k < n; ++k) src[k] *= i_pow(k);

    std::vector<cplx> work(n), res(n);
    matvec_serial(sys->vectors_t.data(), n, src.data(), work.data());
    for (int j = 0; j < n; ++j) {
        const double arg = -angle * sys->eigenvalues[j];
        work[j] *= cplx(std::cos(arg), std::sin(arg));
    }
    matvec_serial(sys->vectors.data(), n, work.data(), res.data());

    if (axis == Axis::Y)
        for (int k = 0; k < n; ++k) res[k] *= std::conj(i_pow(k));
    out.amp = std::move(res);
    return out;
}

HusimiGrid husimi_grid_serial(const DickeState& state, int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("husimi_grid_serial: grid sizes must be >= 2");
    constexpr double kPi = std::numbers::pi;
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

    for (int i = 0; i < n_theta; ++i) {
        const std::vector<double> logs = dicke::css_log_amplitudes(n, grid.theta[i]);
        std::vector<double> r(n + 1);
        for (int k = 0; k <= n; ++k) r[k] = std::isfinite(logs[k]) ? std::exp(logs[k]) : 0.0;
        for (int j = 0; j < n_phi; ++j) {
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

std::vector<cplx> dense_operator(int two_s, OperatorKind kind) {
    const int n = two_s + 1;
    const double s = 0.5 * two_s;
    std::vector<cplx> mat(size_t(n) * n, cplx(0.0, 0.0));
    auto at = [&](int i, int j) -> cplx& { return mat[size_t(i) * n + j]; };
    auto raise_coeff = [&](int k) {
        const double m = 0.5 * (2 * k - two_s);
        return std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    };
    switch (kind) {
        case OperatorKind::Sz:
            for (int k = 0; k < n; ++k) at(k, k) = 0.5 * (2 * k - two_s);
            break;
        case OperatorKind::Splus:
            for (int k = 0; k + 1 < n; ++k) at(k + 1, k) = raise_coeff(k);
            break;
        case OperatorKind::Sminus:
            for (int k = 0; k + 1 < n; ++k) at(k, k + 1) = raise_coeff(k);
            break;
        case OperatorKind::Sx:
            for (int k = 0; k + 1 < n; ++k) {
                at(k + 1, k) = 0.5 * raise_coeff(k);
                at(k, k + 1) = 0.5 * raise_coeff(k);
            }
            break;
        case OperatorKind::Sy:
            for (int k = 0; k + 1 < n; ++k) {
                at(k + 1, k) = cplx(0.0, -0.5) * raise_coeff(k);
                at(k, k + 1) = cplx(0.0, 0.5) * raise_coeff(k);
            }
            break;
    }
    return mat;
}

namespace {

std::vector<cplx> matmul(const std::vector<cplx>& a, const std::vector<cplx>& b, int n) {
    std::vector<cplx> c(size_t(n) * n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = a[size_t(i) * n + k];
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) c[size_t(i) * n + j] += aik * b[size_t(k) * n + j];
        }
    return c;
}

// exp(A) by scaling-and-squaring with a Taylor core; plenty for the
// well-conditioned anti-Hermitian matrices used in tests.
std::vector<cplx> dense_expm(std::vector<cplx> a, int n) {
    double norm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(a[size_t(i) * n + j]);
        norm1 = std::max(norm1, col);
    }
    int squarings = 0;
    while (norm1 > 0.25) {
        norm1 *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (cplx& v : a) v *= scale;

    std::vector<cplx> result(size_t(n) * n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) result[size_t(i) * n + i] = 1.0;
    std::vector<cplx> term = result;
    for (int order = 1; order <= 24; ++order) {
        term = matmul(term, a, n);
        const double inv = 1.0 / order;
        for (cplx& v : term) v *= inv;
        for (size_t i = 0; i < term.size(); ++i) result[i] += term[i];
    }
    for (int q = 0; q < squarings; ++q) result = matmul(result, result, n);
    return result;
}

}  // namespace

DickeState apply_rotation_dense_expm(const DickeState& state, Axis axis, double angle) {
    const int n = state.dimension();
    OperatorKind kind = axis == Axis::X   ? OperatorKind::Sx
                        : axis == Axis::Y ? OperatorKind::Sy
                                          : OperatorKind::Sz;
    std::vector<cplx> gen = dense_operator(state.spin.two_s, kind);
    for (cplx& v : gen) v *= cplx(0.0, -angle);
    std::vector<cplx> u = dense_expm(std::move(gen), n);

    DickeState out = state;
    for (int i = 0; i < n; ++i) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) acc += u[size_t(i) * n + j] * state.amp[j];
        out.amp[i] = acc;
    }
    return out;
}

}  // namespace esq::reference
