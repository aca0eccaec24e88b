// Timing comparison between the OpenMP kernels and their serial reference
// implementations: rotation application, Husimi sampling, and a small
// sensitivity scan. Run with no arguments for the default sizes.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "esq/analytics.hpp"
#include "esq/dicke.hpp"
#include "esq/protocols.hpp"
#include "esq/reference.hpp"
#include "esq/rotation.hpp"

using namespace esq;

namespace {

constexpr double kPi = std::numbers::pi;

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void bench_rotation(int n_atoms, int reps) {
    dicke::x_eigensystem(n_atoms);  // exclude the one-time factorization
    const auto state = dicke::make_css(n_atoms, kPi / 2.0, 0.0);
    volatile double sink = 0.0;

    const double par = time_best_of(reps, [&] {
        const auto r = dicke::apply_rotation(state, dicke::Axis::X, 0.37);
        sink = r.amp[0].real();
    });
    const double ser = time_best_of(reps, [&] {
        const auto r = reference::apply_rotation_serial(state, dicke::Axis::X, 0.37);
        sink = r.amp[0].real();
    });
    std::printf("rotation     N=%-5d  parallel %8.3f ms   serial %8.3f ms   speedup %.2fx\n",
                n_atoms, par * 1e3, ser * 1e3, ser / par);
    (void)sink;
}

void bench_husimi(int n_atoms, int grid, int reps) {
    const auto cat = dicke::apply_oats(dicke::make_css(n_atoms, kPi / 2.0, 0.0), kPi / 2.0);
    volatile double sink = 0.0;
    const double par = time_best_of(reps, [&] {
        const auto q = dicke::husimi_grid(cat, grid, grid);
        sink = q.values[0];
    });
    const double ser = time_best_of(reps, [&] {
        const auto q = reference::husimi_grid_serial(cat, grid, grid);
        sink = q.values[0];
    });
    std::printf("husimi       N=%-5d  grid %dx%d  parallel %8.3f ms   serial %8.3f ms   speedup %.2fx\n",
                n_atoms, grid, grid, par * 1e3, ser * 1e3, ser / par);
    (void)sink;
}

void bench_scan(int n_atoms, int points) {
    dicke::x_eigensystem(n_atoms);
    std::vector<double> out(points);
    auto sweep = [&] {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < points; ++i) {
            const double mu = 0.05 + (kPi / 2.0 - 0.1) * i / (points - 1);
            const auto spec = protocols::build_protocol(protocols::Kind::GespE,
                                                        protocols::Form::Simplified, mu);
            out[i] = protocols::numeric_sensitivity(spec, n_atoms).value_or(0.0);
        }
    };
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    const double par = time_best_of(2, sweep);
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    const double ser = time_best_of(2, sweep);
#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif
    std::printf("mu-scan      N=%-5d  %d points  parallel %8.3f ms   serial %8.3f ms   speedup %.2fx\n",
                n_atoms, points, par * 1e3, ser * 1e3, ser / par);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled\n");
#endif
    bench_rotation(256, 5);
    bench_rotation(1024, 5);
    bench_rotation(2048, 3);
    bench_husimi(64, 256, 3);
    bench_husimi(256, 256, 3);
    bench_scan(128, 32);
    return 0;
}
