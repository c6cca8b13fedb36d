// SPDX-License-Identifier: Apache-2.0

// Compares the serial reference kernels against the OpenMP and FFT paths on
// representative workloads. Build and run:
//   cmake --build build --target radsim_bench && ./build/bench/radsim_bench

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "radsim/iq_signal.hpp"
#include "radsim/kernels.hpp"

using namespace radsim;

namespace {

cvec random_complex(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    cvec v(n);
    for (auto& s : v) s = cdouble{dist(rng), dist(rng)};
    return v;
}

template <typename F>
double time_ms(F&& body, int reps)
{
    // one warmup, then the best of `reps`
    body();
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto dt = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0);
        best = std::min(best, dt.count());
    }
    return best;
}

} // namespace

int main()
{
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n\n");
#endif

    std::mt19937_64 rng(1);

    std::printf("%-28s %10s %12s %12s %12s\n", "convolution", "taps", "serial ms",
                "parallel ms", "fft ms");
    for (const std::size_t n : {4096u, 16384u, 65536u}) {
        for (const std::size_t l : {128u, 480u}) {
            const cvec x = random_complex(rng, n);
            const cvec h = random_complex(rng, l);
            cvec out(n + l - 1);
            const double ts = time_ms([&] { kernels::conv_direct_serial(x, h, out); }, 3);
            const double tp = time_ms([&] { kernels::conv_direct_parallel(x, h, out); }, 3);
            const double tf = time_ms([&] { kernels::conv_fft(x, h, out); }, 3);
            std::printf("N=%-8zu                  %6zu %11.3f %12.3f %12.3f   (x%.1f, x%.1f)\n",
                        n, l, ts, tp, tf, ts / tp, ts / tf);
        }
    }

    std::printf("\n%-28s %10s %12s %12s\n", "normal-equation build", "L", "serial ms",
                "parallel ms");
    for (const std::size_t n : {200u, 400u}) {
        const cvec x = random_complex(rng, n);
        const std::size_t l = 480;
        const std::size_t m = n + l - 1;
        std::vector<double> w(m, 1.0);
        w[m / 2] = 0.0;
        cvec r(l * l);
        const double ts = time_ms([&] { kernels::normal_matrix_serial(x, w, l, r); }, 3);
        const double tp = time_ms([&] { kernels::normal_matrix_parallel(x, w, l, r); }, 3);
        std::printf("waveform N=%-6zu             %6zu %11.3f %12.3f   (x%.1f)\n", n, l, ts,
                    tp, ts / tp);
    }

    std::printf("\n%-28s %10s %12s\n", "power profile", "N", "parallel ms");
    for (const std::size_t n : {1u << 16, 1u << 20}) {
        const cvec y = random_complex(rng, n);
        std::vector<double> p(n);
        const double tp = time_ms([&] { kernels::power_profile(y, p); }, 5);
        std::printf("%-28s %10zu %11.3f\n", "", n, tp);
    }
    return 0;
}
