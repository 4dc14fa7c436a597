// Timings of the OpenMP kernels against their serial reference
// implementations: the Tarry mate-search sweep, all-pairs MUB verification,
// and affine-plane axiom checking.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mubgeo/affine.hpp"
#include "mubgeo/latin.hpp"
#include "mubgeo/mub.hpp"

using namespace mubgeo;

namespace {

double time_of(const std::function<void()>& fn, int repeats = 3) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.4f s %10.4f s %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel variants run serially\n");
#endif
    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    for (int order : {5, 6}) {
        char name[64];
        std::snprintf(name, sizeof(name), "tarry sweep, order %d", order);
        const double ts = time_of([&] { tarry_sweep_serial(order); });
        const double tp = time_of([&] { tarry_sweep_parallel(order); });
        row(name, ts, tp);
    }

    for (int n : {13, 16}) {
        const auto mubs = mub_for_dimension(n);
        char name[64];
        std::snprintf(name, sizeof(name), "mub verification, n = %d", n);
        const double ts = time_of([&] { mub_verify(mubs.bases); });
        const double tp = time_of([&] { mub_verify_parallel(mubs.bases); });
        row(name, ts, tp);
    }

    for (int n : {16, 25, 49}) {
        const auto [p, k] = prime_power_decompose(n);
        const auto plane = plane_from_field(field_create(p, k));
        char name[64];
        std::snprintf(name, sizeof(name), "plane axioms, order %d", n);
        const double ts = time_of([&] { verify_axioms(plane); });
        const double tp = time_of([&] { verify_axioms_parallel(plane); });
        row(name, ts, tp);
    }
    return 0;
}
