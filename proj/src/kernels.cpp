// SPDX-License-Identifier: Apache-2.0

#include "radsim/kernels.hpp"

#include <cassert>
#include <cstddef>
#include <mutex>

#include <fftw3.h>

namespace radsim::kernels {

namespace {

// FFTW's planner is not thread-safe; executing a plan is. Plans are cheap
// with FFTW_ESTIMATE, so each transform creates its own under this lock.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

inline cdouble conv_element(std::span<const cdouble> x, std::span<const cdouble> taps,
                            std::size_t k)
{
    const std::size_t nx = x.size();
    const std::size_t nt = taps.size();
    const std::size_t jlo = k >= nx ? k - nx + 1 : 0;
    const std::size_t jhi = k < nt - 1 ? k : nt - 1;
    cdouble acc{0.0, 0.0};
    for (std::size_t j = jlo; j <= jhi; ++j) {
        acc += taps[j] * x[k - j];
    }
    return acc;
}

} // namespace

void conv_direct_serial(std::span<const cdouble> x, std::span<const cdouble> taps,
                        std::span<cdouble> out)
{
    assert(out.size() == x.size() + taps.size() - 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = conv_element(x, taps, k);
    }
}

void conv_direct_parallel(std::span<const cdouble> x, std::span<const cdouble> taps,
                          std::span<cdouble> out)
{
    assert(out.size() == x.size() + taps.size() - 1);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        out[k] = conv_element(x, taps, static_cast<std::size_t>(k));
    }
}

void conv_fft(std::span<const cdouble> x, std::span<const cdouble> taps,
              std::span<cdouble> out)
{
    const std::size_t m = x.size() + taps.size() - 1;
    assert(out.size() == m);
    const std::size_t n = next_pow2(m);

    cvec a(n, cdouble{}), b(n, cdouble{});
    std::copy(x.begin(), x.end(), a.begin());
    std::copy(taps.begin(), taps.end(), b.begin());

    auto* fa = reinterpret_cast<fftw_complex*>(a.data());
    auto* fb = reinterpret_cast<fftw_complex*>(b.data());

    fftw_plan pa, pb, pi;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        pa = fftw_plan_dft_1d(static_cast<int>(n), fa, fa, FFTW_FORWARD, FFTW_ESTIMATE);
        pb = fftw_plan_dft_1d(static_cast<int>(n), fb, fb, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);

    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] *= b[i] * scale;
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        pi = fftw_plan_dft_1d(static_cast<int>(n), fa, fa, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(pi);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pi);
    }

    std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m), out.begin());
}

cvec convolve_direct(std::span<const cdouble> x, std::span<const cdouble> taps)
{
    cvec out(x.size() + taps.size() - 1);
    conv_direct_parallel(x, taps, out);
    return out;
}

cvec convolve_fast(std::span<const cdouble> x, std::span<const cdouble> taps)
{
    cvec out(x.size() + taps.size() - 1);
    conv_fft(x, taps, out);
    return out;
}

namespace {

// R[i][j] = sum_m w[m+i] conj(x[m]) x[m + i - j], m over the overlap of the
// waveform with itself at lag i - j, shifted so the weight index stays in
// range. Only j <= i is produced.
inline cdouble normal_entry(std::span<const cdouble> x, std::span<const double> w,
                            std::size_t i, std::size_t j)
{
    const std::size_t n = x.size();
    const std::size_t lag = i - j; // j <= i
    cdouble acc{0.0, 0.0};
    for (std::size_t m = 0; m + lag < n; ++m) {
        const double wk = w[m + i];
        if (wk != 0.0) {
            acc += wk * std::conj(x[m]) * x[m + lag];
        }
    }
    return acc;
}

} // namespace

void normal_matrix_serial(std::span<const cdouble> x, std::span<const double> weights,
                          std::size_t filter_len, std::span<cdouble> r_colmajor)
{
    assert(weights.size() == x.size() + filter_len - 1);
    assert(r_colmajor.size() == filter_len * filter_len);
    for (std::size_t j = 0; j < filter_len; ++j) {
        for (std::size_t i = j; i < filter_len; ++i) {
            r_colmajor[j * filter_len + i] = normal_entry(x, weights, i, j);
        }
    }
}

void normal_matrix_parallel(std::span<const cdouble> x, std::span<const double> weights,
                            std::size_t filter_len, std::span<cdouble> r_colmajor)
{
    assert(weights.size() == x.size() + filter_len - 1);
    assert(r_colmajor.size() == filter_len * filter_len);
    const std::ptrdiff_t l = static_cast<std::ptrdiff_t>(filter_len);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t j = 0; j < l; ++j) {
        for (std::ptrdiff_t i = j; i < l; ++i) {
            r_colmajor[static_cast<std::size_t>(j) * filter_len + static_cast<std::size_t>(i)] =
                normal_entry(x, weights, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
}

void power_profile(std::span<const cdouble> y, std::span<double> out)
{
    assert(out.size() == y.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = std::norm(y[i]);
    }
}

} // namespace radsim::kernels
