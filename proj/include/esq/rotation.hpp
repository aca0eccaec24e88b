// Cached eigendecomposition of the tridiagonal S_x matrix, shared by x- and
// y-rotations (S_y = U^dag S_x U with U = diag(i^k)). Computed once per N and
// reused across every (mu, phi) grid point; safe for concurrent readers with
// serialized insertion.

#pragma once

#include <memory>
#include <vector>

namespace esq::dicke {

struct XEigensystem {
    int two_s = 0;
    std::vector<double> eigenvalues;  // ascending, n = two_s + 1
    std::vector<double> vectors;      // row-major V, column j = eigenvector j
    std::vector<double> vectors_t;    // V^T, row-major

    int dimension() const { return two_s + 1; }
};

/// Fetch (computing on first use) the eigensystem for a given 2S.
std::shared_ptr<const XEigensystem> x_eigensystem(int two_s);

/// Drop all cached eigensystems (mainly for memory-sensitive callers).
void clear_rotation_cache();

}  // namespace esq::dicke
