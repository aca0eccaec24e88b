#include "esq/rotation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace esq::dicke {

namespace {

std::shared_ptr<const XEigensystem> compute(int two_s) {
    const int n = two_s + 1;
    const double s = 0.5 * two_s;

    auto sys = std::make_shared<XEigensystem>();
    sys->two_s = two_s;
    sys->eigenvalues.assign(n, 0.0);
    std::vector<double> off(n > 1 ? n - 1 : 1, 0.0);
    for (int k = 0; k + 1 < n; ++k) {
        const double m = 0.5 * (2 * k - two_s);
        off[k] = 0.5 * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }

    sys->vectors.assign(size_t(n) * n, 0.0);
    lapack_int info = LAPACKE_dstedc(LAPACK_ROW_MAJOR, 'I', n, sys->eigenvalues.data(),
                                     off.data(), sys->vectors.data(), n);
    if (info != 0)
        throw std::runtime_error("tridiagonal eigendecomposition failed (dstedc info=" +
                                 std::to_string(info) + ")");

    sys->vectors_t.assign(size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sys->vectors_t[size_t(j) * n + i] = sys->vectors[size_t(i) * n + j];
    return sys;
}

std::mutex cache_mutex;
std::map<int, std::shared_ptr<const XEigensystem>>& cache() {
    static std::map<int, std::shared_ptr<const XEigensystem>> c;
    return c;
}

}  // namespace

std::shared_ptr<const XEigensystem> x_eigensystem(int two_s) {
    if (two_s < 1) throw std::invalid_argument("x_eigensystem: two_s must be >= 1");
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& c = cache();
    auto it = c.find(two_s);
    if (it != c.end()) return it->second;
    auto sys = compute(two_s);
    c.emplace(two_s, sys);
    return sys;
}

void clear_rotation_cache() {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache().clear();
}

}  // namespace esq::dicke
