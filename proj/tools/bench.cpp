// Benchmark of the serial reference kernels against the OpenMP ones: Motzkin
// path summation and rotation-system enumeration. Both pairs must agree
// exactly; timings show the parallel speedup.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stringforge/maps_oracle.hpp"
#include "stringforge/motzkin.hpp"

using namespace stringforge;

namespace {

template <typename F>
double time_of(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    int motzkin_j = argc > 1 ? std::atoi(argv[1]) : 12;
    int threads = 0;
#ifdef _OPENMP
    if (const char* env = std::getenv("STRINGFORGE_THREADS"))
        if (int n = std::atoi(env); n > 0) omp_set_num_threads(n);
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d\n", threads);

    {
        NGradedExpr serial, parallel, transfer;
        double ts = time_of([&] { serial = motzkin_sum_serial(motzkin_j, Variant::A, 3); });
        double tp = time_of(
            [&] { parallel = motzkin_sum_parallel(motzkin_j, Variant::A, 3); });
        double tt = time_of(
            [&] { transfer = motzkin_sum_transfer(motzkin_j, Variant::A, 3); });
        bool same = serial == parallel && serial == transfer;
        std::printf("motzkin sum J=%d order=3: serial %.3fs, openmp %.3fs (%.2fx), "
                    "transfer %.3fs, equal: %s\n",
                    motzkin_j, ts, tp, ts / tp, tt, same ? "yes" : "NO");
        if (!same) return 1;
    }

    {
        std::map<int, int> profile{{4, 4}};  // 16 darts, about 2e6 pairings
        OracleCounts serial, parallel;
        double ts = time_of([&] { serial = enumerate_maps_serial(profile); });
        double tp = time_of([&] { parallel = enumerate_maps_parallel(profile); });
        bool same = serial == parallel;
        int64_t total = 0;
        for (const auto& [k, c] : serial) total += c;
        std::printf("oracle {4:4}: serial %.3fs, openmp %.3fs (%.2fx), connected "
                    "gluings %lld, equal: %s\n",
                    ts, tp, ts / tp, static_cast<long long>(total),
                    same ? "yes" : "NO");
        if (!same) return 1;
    }
    return 0;
}
