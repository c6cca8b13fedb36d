// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "radsim/iq_signal.hpp"

namespace radsim::test {

// Naive O(N*L) convolution written independently of the library kernels;
// this is the oracle the production paths are checked against.
inline cvec naive_convolve(const cvec& x, const cvec& h)
{
    cvec y(x.size() + h.size() - 1, cdouble{});
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            y[i + j] += x[i] * h[j];
        }
    }
    return y;
}

inline double max_relative_error(const cvec& a, const cvec& b)
{
    double ref = 0.0;
    for (const auto& v : b) ref = std::max(ref, std::abs(v));
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        err = std::max(err, std::abs(a[i] - b[i]));
    }
    return ref > 0.0 ? err / ref : err;
}

inline cvec random_complex(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    cvec v(n);
    for (auto& s : v) s = cdouble{dist(rng), dist(rng)};
    return v;
}

inline IQSignal make_signal(cvec samples, double fs)
{
    IQSignal s;
    s.samples = std::move(samples);
    s.sample_rate_hz = fs;
    return s;
}

} // namespace radsim::test
