// Serial reference implementations of the hot kernels, kept for testing the
// OpenMP paths and for the benchmark target, plus a dense scaling-and-squaring
// matrix exponential that serves as the small-N rotation oracle.

#pragma once

#include "esq/dicke.hpp"

namespace esq::reference {

/// Same eigendecomposition route as dicke::apply_rotation, single-threaded.
dicke::DickeState apply_rotation_serial(const dicke::DickeState& state, dicke::Axis axis,
                                        double angle);

/// Single-threaded Husimi sampling, identical contract to dicke::husimi_grid.
dicke::HusimiGrid husimi_grid_serial(const dicke::DickeState& state, int n_theta, int n_phi);

/// e^{-i angle S_axis} |psi> through an explicit dense matrix exponential
/// (scaling and squaring). Intended for N <= a few hundred; test oracle only.
dicke::DickeState apply_rotation_dense_expm(const dicke::DickeState& state, dicke::Axis axis,
                                            double angle);

/// Dense matrix of a collective operator, row-major (2S+1)^2.
std::vector<dicke::cplx> dense_operator(int two_s, dicke::OperatorKind kind);

}  // namespace esq::reference
