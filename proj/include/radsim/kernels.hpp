// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "radsim/iq_signal.hpp"

namespace radsim::kernels {

// Hot inner loops live here in two variants each: a serial reference that
// defines the result bit for bit, and an OpenMP version that partitions
// work over output elements only. Each output element is computed with the
// same operand order in both variants, so the parallel kernels are
// bit-identical to the serial ones for any thread count. The benchmark
// target (radsim_bench) compares all variants.

/// out[k] = sum_j taps[j] * x[k-j], k in [0, |x|+|taps|-1). Serial reference.
void conv_direct_serial(std::span<const cdouble> x, std::span<const cdouble> taps,
                        std::span<cdouble> out);

/// Same contract as conv_direct_serial; parallel over output indices.
void conv_direct_parallel(std::span<const cdouble> x, std::span<const cdouble> taps,
                          std::span<cdouble> out);

/// Full convolution via FFT (radix-2 sized transforms through FFTW).
/// Matches the direct kernels to better than 1e-9 relative error.
void conv_fft(std::span<const cdouble> x, std::span<const cdouble> taps,
              std::span<cdouble> out);

/// Convenience allocating wrappers.
cvec convolve_direct(std::span<const cdouble> x, std::span<const cdouble> taps);
cvec convolve_fast(std::span<const cdouble> x, std::span<const cdouble> taps);

/// Weighted normal-equation matrix for mismatched-filter design:
/// R[i][j] = sum_k w[k] conj(x[k-i]) x[k-j] over lags k where both factors
/// exist, column-major storage, Hermitian (only the lower triangle j <= i
/// is filled; the solver reads it as self-adjoint). `weights` has length
/// |x| + filter_len - 1 and already carries zeros inside the mainlobe
/// window. Serial reference and a parallel twin with identical results.
void normal_matrix_serial(std::span<const cdouble> x, std::span<const double> weights,
                          std::size_t filter_len, std::span<cdouble> r_colmajor);
void normal_matrix_parallel(std::span<const cdouble> x, std::span<const double> weights,
                            std::size_t filter_len, std::span<cdouble> r_colmajor);

/// |y[k]|^2 for each k; parallel over elements.
void power_profile(std::span<const cdouble> y, std::span<double> out);

} // namespace radsim::kernels
